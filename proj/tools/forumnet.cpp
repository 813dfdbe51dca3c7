// Batch CLI: ingest a forum message log, compute the metric suite, run
// removal-strategy sweeps, fingerprint moderators, or generate synthetic
// corpora. Exit codes: 0 success, 1 data error, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <omp.h>

#include "forumnet/experiments.hpp"
#include "forumnet/ingest.hpp"
#include "forumnet/metrics.hpp"
#include "forumnet/roles.hpp"
#include "forumnet/synthgen.hpp"

namespace fs = std::filesystem;
using namespace forumnet;

namespace {

constexpr const char* kVersion = "forumnet 1.0.0";

std::int64_t parse_window(const std::string& s) {
    if (s.size() < 2) throw CLI::ValidationError("--window", "expected <number><s|m|h|d>");
    char unit = s.back();
    std::int64_t mult;
    switch (unit) {
        case 's': mult = 1; break;
        case 'm': mult = 60; break;
        case 'h': mult = 3600; break;
        case 'd': mult = 86400; break;
        default: throw CLI::ValidationError("--window", "unit must be s, m, h or d");
    }
    std::int64_t value;
    try {
        value = std::stoll(s.substr(0, s.size() - 1));
    } catch (...) {
        throw CLI::ValidationError("--window", "expected <number><s|m|h|d>");
    }
    if (value <= 0) throw CLI::ValidationError("--window", "window must be positive");
    return value * mult;
}

std::uint64_t fnv1a_digest(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t h = 14695981039346656037ULL;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
    }
    return h;
}

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(fmt::format("cannot open input file: {}", path.string()));
    return in;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(fmt::format("cannot write output file: {}", path.string()));
    return out;
}

struct CommonOpts {
    std::string messages, roster, lexicon, out_dir = ".";
    std::string direction = "directed";
    std::string window = "7d";
    std::string format = "csv";
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool need_roster) {
    cmd->add_option("--messages", o.messages, "Message log (delimited table)")->required();
    auto* r = cmd->add_option("--roster", o.roster, "Role roster (author_id, role)");
    if (need_roster) r->required();
    cmd->add_option("--lexicon", o.lexicon, "Sentiment fallback lexicon (word, polarity)");
    cmd->add_option("--out", o.out_dir, "Output directory")->required();
    cmd->add_option("--direction", o.direction, "Distance/betweenness direction")
        ->check(CLI::IsMember({"directed", "projection"}))
        ->capture_default_str();
    cmd->add_option("--window", o.window, "Oscillation window, e.g. 7d, 12h")
        ->capture_default_str();
    cmd->add_option("--format", o.format, "Message log format")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
    cmd->add_option("--threads", o.threads, "Worker thread cap (0 = default)");
}

struct LoadedCorpus {
    std::vector<MessageEvent> events;
    Roster roster;
    Lexicon lexicon;
    MetricsConfig cfg;
    ForumGraph graph;
    std::vector<std::string> diagnostics;
};

LoadedCorpus load(const CommonOpts& o) {
    LoadedCorpus c;
    c.cfg.direction =
        o.direction == "projection" ? Direction::undirected_projection : Direction::directed;
    c.cfg.oscillation_window_seconds = parse_window(o.window);
    if (o.threads > 0) omp_set_num_threads(o.threads);

    auto in = open_input(o.messages);
    auto parsed = parse_message_log(
        in, o.format == "jsonl" ? LogFormat::line_delimited_records : LogFormat::delimited_table);
    c.events = std::move(parsed.events);
    c.diagnostics = std::move(parsed.diagnostics);
    c.graph = ForumGraph::build(c.events);
    if (!o.roster.empty()) {
        auto rin = open_input(o.roster);
        auto rr = parse_roster(rin, c.graph.node_ids());
        c.roster = std::move(rr.roster);
        for (auto& d : rr.diagnostics) c.diagnostics.push_back(std::move(d));
    }
    if (!o.lexicon.empty()) {
        auto lin = open_input(o.lexicon);
        c.lexicon = Lexicon::parse(lin);
        c.cfg.lexicon = c.lexicon;
    }
    return c;
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const std::map<std::string, std::string>& settings,
                    const std::vector<fs::path>& inputs) {
    auto out = open_output(out_dir / "run_manifest.txt");
    out << "tool = " << kVersion << "\n";
    out << "command = " << command << "\n";
    for (const auto& [k, v] : settings) out << k << " = " << v << "\n";
    for (const auto& p : inputs)
        out << "input " << p.filename().string() << " fnv1a = "
            << fmt::format("{:016x}", fnv1a_digest(p)) << "\n";
}

std::map<std::string, std::string> common_settings(const CommonOpts& o) {
    return {{"direction", o.direction},
            {"window", o.window},
            {"format", o.format},
            {"lexicon", o.lexicon.empty() ? "(none)" : o.lexicon},
            {"roster", o.roster.empty() ? "(none)" : o.roster}};
}

int cmd_analyze(const CommonOpts& o) {
    auto c = load(o);
    fs::create_directories(o.out_dir);
    auto metrics = compute_node_metrics(c.events, c.graph, c.cfg);
    {
        auto out = open_output(fs::path(o.out_dir) / "node_metrics.csv");
        write_node_metrics(out, metrics);
    }
    {
        auto out = open_output(fs::path(o.out_dir) / "network_summary.csv");
        render_network_summary(out, network_summary(c.graph, c.cfg.direction), {});
    }
    std::vector<fs::path> inputs = {o.messages};
    if (!o.roster.empty()) inputs.push_back(o.roster);
    write_manifest(o.out_dir, "analyze", common_settings(o), inputs);
    for (const auto& d : c.diagnostics) std::clog << "note: " << d << "\n";
    return 0;
}

int cmd_stability(const CommonOpts& o, const std::string& strategies_arg, bool detect_spam,
                  double activity_percentile, int max_nonspam_answers) {
    std::vector<RemovalStrategy> strategies;
    std::stringstream ss(strategies_arg);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (!token.empty()) strategies.push_back(parse_strategy(token));
    }
    if (strategies.empty()) throw CLI::ValidationError("--strategies", "strategy list is empty");

    auto c = load(o);
    fs::create_directories(o.out_dir);
    auto metrics = compute_node_metrics(c.events, c.graph, c.cfg);

    RoleLabels labels;
    labels.moderators = c.roster.with_role(Role::moderator);
    labels.spammers = c.roster.with_role(Role::spammer);
    if (detect_spam) {
        SpamDetectConfig sc;
        sc.activity_percentile = activity_percentile;
        sc.max_nonspam_answers = max_nonspam_answers;
        auto report = detect_spammers(metrics, c.events, c.graph, sc);
        labels.spammers.clear();
        for (const auto& v : report.verdicts)
            if (v.is_spammer) labels.spammers.push_back(v.node);
        for (const auto& w : report.warnings) std::clog << "warning: " << w << "\n";
    }

    auto reports = stability_analysis(c.events, c.graph, metrics, strategies, labels, c.cfg);
    {
        auto out = open_output(fs::path(o.out_dir) / "network_summary.csv");
        render_network_summary(out, reports.empty() ? network_summary(c.graph, c.cfg.direction)
                                                    : reports.front().before,
                               reports);
    }
    {
        auto out = open_output(fs::path(o.out_dir) / "stability.csv");
        render_stability(out, reports);
    }
    auto settings = common_settings(o);
    settings["strategies"] = strategies_arg;
    settings["detect_spammers"] = detect_spam ? "true" : "false";
    settings["activity_percentile"] = fmt::format("{}", activity_percentile);
    settings["max_nonspam_answers"] = fmt::format("{}", max_nonspam_answers);
    std::vector<fs::path> inputs = {o.messages};
    if (!o.roster.empty()) inputs.push_back(o.roster);
    write_manifest(o.out_dir, "stability", settings, inputs);
    return 0;
}

int cmd_fingerprint(const CommonOpts& o) {
    auto c = load(o);
    fs::create_directories(o.out_dir);
    auto metrics = compute_node_metrics(c.events, c.graph, c.cfg);
    auto rows = moderator_fingerprint(metrics, c.roster);
    {
        auto out = open_output(fs::path(o.out_dir) / "fingerprint.csv");
        write_fingerprint(out, rows);
    }
    auto ranking = rank_moderator_candidates(metrics);
    {
        auto out = open_output(fs::path(o.out_dir) / "candidates.csv");
        write_candidates(out, ranking);
    }
    for (const auto& d : ranking.diagnostics) std::clog << "note: " << d << "\n";
    write_manifest(o.out_dir, "fingerprint", common_settings(o), {o.messages, o.roster});
    return 0;
}

int cmd_generate(const std::string& out_dir, const SynthConfig& cfg,
                 const std::string& config_file) {
    SynthConfig effective = cfg;
    if (!config_file.empty()) {
        auto in = open_input(config_file);
        std::string line;
        while (std::getline(in, line)) {
            auto eq = line.find('=');
            if (eq == std::string::npos || line.empty() || line[0] == '#') continue;
            auto trim = [](std::string s) {
                s.erase(0, s.find_first_not_of(" \t"));
                s.erase(s.find_last_not_of(" \t") + 1);
                return s;
            };
            std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
            if (key == "n_users") effective.n_users = std::stoi(val);
            else if (key == "n_messages") effective.n_messages = std::stoi(val);
            else if (key == "n_moderators") effective.n_moderators = std::stoi(val);
            else if (key == "n_spammers") effective.n_spammers = std::stoi(val);
            else if (key == "attachment") effective.attachment = std::stod(val);
            else if (key == "moderator_reply_mult") effective.moderator_reply_mult = std::stod(val);
            else if (key == "moderator_delay_div") effective.moderator_delay_div = std::stod(val);
            else if (key == "spammer_rate_mult") effective.spammer_rate_mult = std::stod(val);
            else if (key == "span_days") effective.span_seconds = std::stoll(val) * 86400;
            else if (key == "seed") effective.seed = std::stoull(val);
            else throw DataError(fmt::format("generator config: unknown key \"{}\"", key));
        }
    }
    auto corpus = generate_forum(effective);
    fs::create_directories(out_dir);
    {
        auto out = open_output(fs::path(out_dir) / "messages.csv");
        write_message_log(out, corpus.events);
    }
    {
        auto out = open_output(fs::path(out_dir) / "roster.csv");
        write_roster(out, corpus.roster);
    }
    std::map<std::string, std::string> settings = {
        {"n_users", fmt::format("{}", effective.n_users)},
        {"n_messages", fmt::format("{}", effective.n_messages)},
        {"n_moderators", fmt::format("{}", effective.n_moderators)},
        {"n_spammers", fmt::format("{}", effective.n_spammers)},
        {"seed", fmt::format("{}", effective.seed)}};
    write_manifest(out_dir, "generate", settings, {});
    std::cout << "seed: " << effective.seed << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Forum reply-graph robustness and metric-stability toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOpts analyze_opts, stability_opts, fingerprint_opts;
    auto* analyze = app.add_subcommand("analyze", "Per-node metrics and whole-network summary");
    add_common(analyze, analyze_opts, false);

    auto* stability =
        app.add_subcommand("stability", "Removal-strategy sweep: robustness + stability reports");
    add_common(stability, stability_opts, false);
    std::string strategies_arg =
        "top1,top5,top10,bottom,moderators,spammers,moderators+spammers,top1+bottom,"
        "moderators+bottom,spammers+bottom";
    bool detect_spam = false;
    double activity_percentile = 0.99;
    int max_nonspam = 1;
    stability->add_option("--strategies", strategies_arg, "Comma-separated strategy tokens")
        ->capture_default_str();
    stability->add_flag("--detect-spammers", detect_spam,
                        "Use rule-based spammer detection instead of the roster");
    stability->add_option("--activity-percentile", activity_percentile,
                          "Spammer condition (a) percentile")
        ->capture_default_str();
    stability->add_option("--max-nonspam-answers", max_nonspam,
                          "Spammer condition (b) answer cap")
        ->capture_default_str();

    auto* fingerprint =
        app.add_subcommand("fingerprint", "Moderator t-test fingerprint and candidate ranking");
    add_common(fingerprint, fingerprint_opts, true);

    auto* generate = app.add_subcommand("generate", "Seeded synthetic forum corpus");
    SynthConfig synth;
    std::string gen_out = ".", gen_config;
    generate->add_option("--out", gen_out, "Output directory")->required();
    generate->add_option("--seed", synth.seed, "RNG seed")->capture_default_str();
    generate->add_option("--users", synth.n_users, "User count")->capture_default_str();
    generate->add_option("--count", synth.n_messages, "Message count")->capture_default_str();
    generate->add_option("--moderators", synth.n_moderators, "Planted moderators")
        ->capture_default_str();
    generate->add_option("--spammers", synth.n_spammers, "Planted spammers")
        ->capture_default_str();
    generate->add_option("--config", gen_config, "Key=value generator config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForVersion")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(analyze_opts);
        if (stability->parsed())
            return cmd_stability(stability_opts, strategies_arg, detect_spam, activity_percentile,
                                 max_nonspam);
        if (fingerprint->parsed()) return cmd_fingerprint(fingerprint_opts);
        if (generate->parsed()) return cmd_generate(gen_out, synth, gen_config);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
