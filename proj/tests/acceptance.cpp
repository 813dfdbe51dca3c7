// Acceptance gate: one line per criterion, nonzero exit when any fail.
// Usage: acceptance <path-to-forumnet-binary>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "forumnet/experiments.hpp"
#include "forumnet/ingest.hpp"
#include "forumnet/interaction.hpp"
#include "forumnet/roles.hpp"
#include "forumnet/synthgen.hpp"
#include "test_util.hpp"

using namespace forumnet;
namespace fs = std::filesystem;
using clk = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& detail) {
    fmt::print("{} criterion {}: {}\n", ok ? "PASS" : "FAIL", idx, detail);
    if (!ok) ++failures;
}

double seconds_since(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// ---- criterion 1: brute-force oracle equivalence on random digraphs ----

void criterion_1() {
    auto t0 = clk::now();
    int graphs = 0;
    std::string why;
    for (std::uint64_t seed = 1; seed <= 200 && why.empty(); ++seed) {
        auto g = testutil::random_digraph(seed);
        ++graphs;
        for (auto dir : {Direction::directed, Direction::undirected_projection}) {
            auto oracle = testutil::summary_oracle(g, dir);
            auto got = network_summary(g, dir);
            if (oracle.has_pairs != got.adarp.has_value()) {
                why = fmt::format("seed {}: reachable-pair presence mismatch", seed);
                break;
            }
            if (oracle.has_pairs &&
                (!close(*got.adarp, oracle.adarp, 1e-9) || *got.diameter != oracle.diameter)) {
                why = fmt::format("seed {}: adarp/diameter mismatch", seed);
                break;
            }
            if (!close(got.clustering, oracle.clustering, 1e-9)) {
                why = fmt::format("seed {}: clustering mismatch", seed);
                break;
            }
            auto closeness = closeness_centrality(g, dir);
            auto bc = betweenness(g, dir);
            auto bc_oracle = testutil::betweenness_oracle(g, dir);
            for (int u = 0; u < g.node_count(); ++u) {
                if (!close(closeness[u], oracle.closeness[u], 1e-9) ||
                    !close(bc[u], bc_oracle[u], 1e-9)) {
                    why = fmt::format("seed {}: node {} centrality mismatch", seed, u);
                    break;
                }
            }
            if (!why.empty()) break;
        }
    }
    double dt = seconds_since(t0);
    bool ok = why.empty() && dt < 30.0;
    report(1, ok,
           why.empty()
               ? fmt::format("{} random digraphs match the brute-force oracle ({:.1f}s)", graphs, dt)
               : why);
}

// ---- criterion 2: statistics fixtures ----

void criterion_2() {
    std::vector<double> a = {1, 2, 3}, b = {4, 5, 6};
    auto w = welch_t_test(a, b);
    bool welch_ok = close(w.t, -3.674, 1e-3) && close(w.df, 4.0, 1e-9) && close(w.p_two_sided, 0.0212, 1e-3);

    std::vector<double> x = {1, 2, 3};
    auto r1 = pearson(x, std::vector<double>{2, 4, 6});
    auto r2 = pearson(x, std::vector<double>{6, 4, 2});
    auto r3 = pearson(x, std::vector<double>{1, 2, 4});
    bool pearson_ok = r1 && r2 && r3 && close(r1->r, 1.0, 1e-4) && close(r2->r, -1.0, 1e-4) &&
                      close(r3->r, 0.9820, 1e-4);
    report(2, welch_ok && pearson_ok,
           fmt::format("welch t={:.3f} df={:.0f} p={:.4f}; pearson r={:.4f}/{:.4f}/{:.4f}", w.t,
                       w.df, w.p_two_sided, r1 ? r1->r : 0, r2 ? r2->r : 0, r3 ? r3->r : 0));
}

// ---- shared synthetic corpus for criteria 3-5 ----

struct DefaultCorpus {
    SynthCorpus corpus;
    ForumGraph graph;
    std::vector<NodeMetricsRecord> metrics;
    MetricsConfig cfg;
    RoleLabels labels;
    std::vector<StabilityReport> reports;
    double build_seconds = 0;
};

DefaultCorpus make_default_corpus() {
    auto t0 = clk::now();
    DefaultCorpus d;
    d.corpus = generate_forum(SynthConfig{});
    d.graph = ForumGraph::build(d.corpus.events);
    d.metrics = compute_node_metrics(d.corpus.events, d.graph, d.cfg);
    d.labels.moderators = d.corpus.roster.with_role(Role::moderator);
    d.labels.spammers = d.corpus.roster.with_role(Role::spammer);
    d.reports = stability_analysis(
        d.corpus.events, d.graph, d.metrics,
        {parse_strategy("top1"), parse_strategy("top10"), parse_strategy("bottom"),
         parse_strategy("spammers")},
        d.labels, d.cfg);
    d.build_seconds = seconds_since(t0);
    return d;
}

const StabilityReport& report_for(const DefaultCorpus& d, const std::string& strategy) {
    auto it = std::find_if(d.reports.begin(), d.reports.end(),
                           [&](const StabilityReport& r) { return r.strategy == strategy; });
    if (it == d.reports.end()) throw std::runtime_error("missing strategy " + strategy);
    return *it;
}

std::optional<double> stability_r(const StabilityReport& rep, const std::string& metric) {
    for (const auto& m : rep.metrics)
        if (m.metric == metric && m.correlation) return m.correlation->r;
    return std::nullopt;
}

void criterion_3(const DefaultCorpus& d) {
    const auto& top1 = report_for(d, "top1");
    const auto& bottom = report_for(d, "bottom");
    bool ok = true;
    std::string detail;
    if (!top1.before.adarp || !top1.after.adarp || !bottom.after.adarp) {
        ok = false;
        detail = "missing adarp on a reduced network";
    } else {
        double adarp_ratio = *top1.after.adarp / *top1.before.adarp;
        double cc_drop = (top1.before.clustering - top1.after.clustering) / top1.before.clustering;
        double bottom_shift =
            std::abs(*bottom.after.adarp - *bottom.before.adarp) / *bottom.before.adarp;
        ok = adarp_ratio >= 1.5 && cc_drop >= 0.5 && bottom_shift < 0.10 &&
             d.build_seconds < 60.0;
        detail = fmt::format(
            "top1: adarp x{:.2f}, clustering -{:.0f}%; bottom: adarp shift {:.1f}%; {:.1f}s",
            adarp_ratio, cc_drop * 100, bottom_shift * 100, d.build_seconds);
    }
    report(3, ok, detail);
}

void criterion_4(const DefaultCorpus& d) {
    auto deg_bottom = stability_r(report_for(d, "bottom"), "degree");
    auto deg_spam = stability_r(report_for(d, "spammers"), "degree");
    auto ci_top10 = stability_r(report_for(d, "top10"), "contribution_index");
    auto ci_bottom = stability_r(report_for(d, "bottom"), "contribution_index");
    bool ok = deg_bottom && deg_spam && ci_top10 && ci_bottom && *deg_bottom >= 0.95 &&
              *deg_spam >= 0.95 && *ci_top10 <= *ci_bottom - 0.2;
    report(4, ok,
           fmt::format("degree r: bottom {:.3f}, spammers {:.3f}; CI r: top10 {:.3f} vs bottom {:.3f}",
                       deg_bottom.value_or(-9), deg_spam.value_or(-9), ci_top10.value_or(-9),
                       ci_bottom.value_or(-9)));
}

void criterion_5(const DefaultCorpus& d) {
    std::set<std::string> planted_spam(d.labels.spammers.begin(), d.labels.spammers.end());
    std::set<std::string> planted_mods(d.labels.moderators.begin(), d.labels.moderators.end());

    auto spam_report = detect_spammers(d.metrics, d.corpus.events, d.graph);
    int hits = 0, false_pos = 0, flagged = 0, inconsistent = 0;
    for (const auto& v : spam_report.verdicts) {
        if (!v.is_spammer) continue;
        ++flagged;
        if (planted_spam.count(v.node)) ++hits;
        else ++false_pos;
        if (!v.ci_consistent) ++inconsistent;
    }
    int n = d.graph.node_count();
    bool spam_ok = hits >= 9 && false_pos <= n / 100 && inconsistent == 0;

    auto rows = moderator_fingerprint(d.metrics, d.corpus.roster);
    bool fp_ok = true;
    int fp_rows = 0;
    for (const auto& row : rows) {
        if (row.metric != std::string("degree") && row.metric != std::string("betweenness"))
            continue;
        ++fp_rows;
        fp_ok = fp_ok && row.tested && row.significant && row.direction == "higher";
    }
    fp_ok = fp_ok && fp_rows == 2;

    auto ranking = rank_moderator_candidates(d.metrics);
    int decile = std::max(1, n / 10);
    int mods_in_decile = 0;
    for (int i = 0; i < decile && i < static_cast<int>(ranking.ranked.size()); ++i)
        if (planted_mods.count(ranking.ranked[i].node)) ++mods_in_decile;
    bool rank_ok = mods_in_decile * 5 >= static_cast<int>(planted_mods.size()) * 4;

    report(5, spam_ok && fp_ok && rank_ok,
           fmt::format("spammers {}/{} flagged, {} false positives, {} CI-inconsistent; "
                       "degree/betweenness fingerprint {}; {}/{} moderators in top decile",
                       hits, planted_spam.size(), false_pos, inconsistent,
                       fp_ok ? "higher+significant" : "WEAK", mods_in_decile, planted_mods.size()));
}

// ---- criterion 6: invariant property suites ----

void criterion_6() {
    std::string why;

    // CI range and CI = 1 <=> received = 0, over random corpora
    std::mt19937_64 rng(4242);
    for (int round = 0; round < 25 && why.empty(); ++round) {
        std::vector<MessageEvent> events;
        std::vector<std::string> ids;
        Timestamp t = 1000;
        for (int u = 0; u < 6; ++u) {
            MessageEvent e;
            e.message_id = fmt::format("o{}", u);
            e.thread_id = "t";
            e.author_id = fmt::format("u{}", u);
            e.timestamp = t += 30;
            ids.push_back(e.message_id);
            events.push_back(e);
        }
        for (int i = 0; i < 40; ++i) {
            MessageEvent e;
            e.message_id = fmt::format("r{}", i);
            e.thread_id = "t";
            e.parent_id = ids[rng() % ids.size()];
            e.author_id = fmt::format("u{}", rng() % 6);
            e.timestamp = t += 30;
            ids.push_back(e.message_id);
            events.push_back(e);
        }
        auto g = ForumGraph::build(events);
        MetricsConfig cfg;
        for (const auto& m : compute_node_metrics(events, g, cfg)) {
            if (!m.contribution_index) continue;
            double ci = *m.contribution_index;
            if (ci < -1.0 || ci > 1.0) why = "CI out of range";
            if ((ci == 1.0) != (m.received == 0)) why = "CI=1 iff received=0 violated";
        }
    }

    // pearson/t-test affine invariances
    if (why.empty()) {
        std::vector<double> x = {1, 4, 2, 8, 5}, y = {2, 2, 7, 4, 1};
        std::vector<double> y2 = y;
        for (double& v : y2) v = 2.5 * v + 3.0;
        auto p1 = pearson(x, y);
        auto p2 = pearson(x, y2);
        if (!p1 || !p2 || !close(p1->r, p2->r, 1e-9)) why = "pearson affine invariance violated";
        std::vector<double> xs = x;
        for (double& v : xs) v += 11.0;
        std::vector<double> ys = y;
        for (double& v : ys) v += 11.0;
        auto w1 = welch_t_test(x, y);
        auto w2 = welch_t_test(xs, ys);
        if (!close(w1.t, w2.t, 1e-9)) why = "welch shift invariance violated";
    }

    // oscillation count can never exceed interior length of the series
    if (why.empty()) {
        std::vector<MessageEvent> events;
        Timestamp t = 0;
        std::mt19937_64 orng(99);
        std::vector<std::string> ids;
        for (int i = 0; i < 120; ++i) {
            MessageEvent e;
            e.message_id = fmt::format("m{}", i);
            e.thread_id = "t";
            if (!ids.empty() && orng() % 3) e.parent_id = ids[orng() % ids.size()];
            e.author_id = fmt::format("u{}", orng() % 5);
            e.timestamp = t += 3600;
            ids.push_back(e.message_id);
            events.push_back(e);
        }
        auto g = ForumGraph::build(events);
        std::int64_t window = 6 * 3600;
        std::int64_t span = events.back().timestamp - events.front().timestamp;
        auto windows = span / window + 1;
        auto osc = betweenness_oscillations(events, g, window, Direction::directed);
        for (int u = 0; u < g.node_count(); ++u)
            if (osc[u] > std::max<std::int64_t>(0, windows - 2))
                why = "oscillation count exceeds series interior";
    }

    // empty-removal identity: every defined stability correlation is 1
    if (why.empty()) {
        SynthConfig cfg;
        cfg.n_users = 50;
        cfg.n_messages = 700;
        cfg.n_moderators = 3;
        cfg.n_spammers = 2;
        cfg.seed = 17;
        auto corpus = generate_forum(cfg);
        auto g = ForumGraph::build(corpus.events);
        MetricsConfig mcfg;
        auto metrics = compute_node_metrics(corpus.events, g, mcfg);
        auto kept = filter_events(corpus.events, {});
        if (kept.size() != corpus.events.size()) why = "empty removal altered the event log";
        auto metrics2 = compute_node_metrics(kept, g, mcfg);
        for (const auto& col : metric_columns()) {
            std::vector<double> a, b;
            for (std::size_t i = 0; i < metrics.size(); ++i) {
                auto va = col.get(metrics[i]), vb = col.get(metrics2[i]);
                if (va && vb) {
                    a.push_back(*va);
                    b.push_back(*vb);
                }
            }
            auto r = pearson(a, b);
            if (r && !close(r->r, 1.0, 1e-9)) why = "empty-removal stability below 1";
        }

        // union deduplication: |A u B| = |set union|, never the raw sum
        auto labels = RoleLabels{corpus.roster.with_role(Role::moderator),
                                 corpus.roster.with_role(Role::spammer)};
        auto a_set = select_removal_set(g, parse_strategy("top10"), labels);
        auto b_set = select_removal_set(g, parse_strategy("bottom"), labels);
        auto u_set = select_removal_set(g, parse_strategy("top10+bottom"), labels);
        std::set<std::string> expect(a_set.begin(), a_set.end());
        expect.insert(b_set.begin(), b_set.end());
        if (u_set.size() != expect.size() ||
            !std::equal(expect.begin(), expect.end(), u_set.begin()))
            why = "union strategy is not a deduplicated set union";
    }

    report(6, why.empty(), why.empty() ? "interaction, statistics and removal invariants hold" : why);
}

// ---- criterion 7: CLI determinism ----

int run_cli(const std::string& cli, const std::string& args) {
    std::string cmd = cli + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return status == -1 ? -1 : WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_7(const std::string& cli) {
    auto root = fs::temp_directory_path() / "forumnet_acceptance_det";
    fs::remove_all(root);
    std::vector<fs::path> runs = {root / "a", root / "b"};
    bool ok = true;
    std::string why;
    for (const auto& run : runs) {
        if (run_cli(cli, "generate --out " + run.string() +
                             " --users 200 --count 3000 --moderators 6 --spammers 4 --seed 5") != 0 ||
            run_cli(cli, "stability --messages " + (run / "messages.csv").string() + " --roster " +
                             (run / "roster.csv").string() + " --out " + (run / "rep").string() +
                             " --strategies top5,bottom,spammers") != 0) {
            ok = false;
            why = "a pipeline invocation failed";
            break;
        }
    }
    if (ok) {
        for (const char* file :
             {"messages.csv", "roster.csv", "rep/network_summary.csv", "rep/stability.csv"}) {
            auto a = slurp(runs[0] / file), b = slurp(runs[1] / file);
            if (a.empty() || a != b) {
                ok = false;
                why = fmt::format("{} differs between identical runs", file);
                break;
            }
        }
    }
    report(7, ok, ok ? "generate + stability reports are byte-identical across runs" : why);
}

// ---- criterion 8: golden report row ----

void criterion_8() {
    NetworkSummary full;
    full.n = 5142;
    full.arc_count = 10993;
    full.adarp = 3.3006;
    full.clustering = 0.5864;
    full.avg_degree = 4.2752;
    full.diameter = 9;
    std::ostringstream out;
    render_network_summary(out, full, {});
    bool ok = out.str().find("3.301, 0.586, 4.275, 9") != std::string::npos;
    report(8, ok, ok ? "summary row renders as \"3.301, 0.586, 4.275, 9\"" : out.str());
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-forumnet-binary>\n");
        return 1;
    }
    criterion_1();
    criterion_2();
    auto d = make_default_corpus();
    criterion_3(d);
    criterion_4(d);
    criterion_5(d);
    criterion_6();
    criterion_7(argv[1]);
    criterion_8();
    return failures == 0 ? 0 : 1;
}
