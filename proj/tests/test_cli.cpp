// End-to-end checks that drive the installed binary through std::system.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "forumnet/ingest.hpp"
#include "forumnet/synthgen.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_cli;  // path to the forumnet binary, from argv[1]

int run(const std::string& args) {
    std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

fs::path scratch_dir(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("forumnet_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_small_corpus(const fs::path& dir) {
    forumnet::SynthConfig cfg;
    cfg.n_users = 40;
    cfg.n_messages = 500;
    cfg.n_moderators = 3;
    cfg.n_spammers = 2;
    cfg.seed = 11;
    auto corpus = forumnet::generate_forum(cfg);
    std::ofstream m(dir / "messages.csv", std::ios::binary);
    forumnet::write_message_log(m, corpus.events);
    std::ofstream r(dir / "roster.csv", std::ios::binary);
    forumnet::write_roster(r, corpus.roster);
    return dir / "messages.csv";
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("version and usage errors") {
    CHECK(run("--version") == 0);
    CHECK(run("") == 2);                    // missing subcommand
    CHECK(run("analyze") == 2);             // missing required options
    CHECK(run("frobnicate") == 2);          // unknown subcommand
    CHECK(run("analyze --no-such-flag") == 2);
}

TEST_CASE("analyze produces metrics, summary and manifest") {
    auto dir = scratch_dir("analyze");
    auto messages = write_small_corpus(dir);
    auto out = dir / "out";
    CHECK(run("analyze --messages " + messages.string() + " --roster " +
              (dir / "roster.csv").string() + " --out " + out.string()) == 0);
    CHECK(fs::exists(out / "node_metrics.csv"));
    CHECK(fs::exists(out / "network_summary.csv"));
    CHECK(fs::exists(out / "run_manifest.txt"));
    auto manifest = slurp(out / "run_manifest.txt");
    CHECK(manifest.find("command = analyze") != std::string::npos);
    CHECK(manifest.find("fnv1a") != std::string::npos);

    auto header = slurp(out / "node_metrics.csv");
    CHECK(header.rfind("node,", 0) == 0);
}

TEST_CASE("stability produces both reports") {
    auto dir = scratch_dir("stability");
    auto messages = write_small_corpus(dir);
    auto out = dir / "out";
    CHECK(run("stability --messages " + messages.string() + " --roster " +
              (dir / "roster.csv").string() + " --strategies top10,bottom --out " +
              out.string()) == 0);
    CHECK(fs::exists(out / "network_summary.csv"));
    CHECK(fs::exists(out / "stability.csv"));
    auto summary = slurp(out / "network_summary.csv");
    CHECK(summary.find("full_network") != std::string::npos);
    CHECK(summary.find("top10") != std::string::npos);
}

TEST_CASE("data errors exit 1, usage errors exit 2") {
    auto dir = scratch_dir("errors");
    auto messages = write_small_corpus(dir);
    auto out = (dir / "out").string();

    CHECK(run("analyze --messages " + (dir / "missing.csv").string() + " --out " + out) == 1);
    CHECK(run("analyze --messages " + messages.string() + " --out " + out + " --window 0d") == 2);
    CHECK(run("analyze --messages " + messages.string() + " --out " + out +
              " --direction sideways") == 2);
    CHECK(run("stability --messages " + messages.string() + " --out " + out +
              " --strategies nonsense") == 2);
    // spammers strategy without roster or detection: needed label set is empty
    CHECK(run("stability --messages " + messages.string() + " --out " + out +
              " --strategies spammers") == 1);

    // duplicate message id is a data error
    std::ofstream bad(dir / "dup.csv", std::ios::binary);
    bad << "message_id,thread_id,parent_id,author_id,timestamp,sentiment,spam_label,text\n";
    bad << "m1,t,,alice,2016-03-01T00:00:00Z,,,\n";
    bad << "m1,t,,bob,2016-03-01T00:01:00Z,,,\n";
    bad.close();
    CHECK(run("analyze --messages " + (dir / "dup.csv").string() + " --out " + out) == 1);
}

TEST_CASE("generate is reproducible end to end") {
    auto dir = scratch_dir("generate");
    auto a = dir / "a";
    auto b = dir / "b";
    std::string args = " --users 50 --count 600 --moderators 3 --spammers 2 --seed 99";
    CHECK(run("generate --out " + a.string() + args) == 0);
    CHECK(run("generate --out " + b.string() + args) == 0);
    CHECK(slurp(a / "messages.csv") == slurp(b / "messages.csv"));
    CHECK(slurp(a / "roster.csv") == slurp(b / "roster.csv"));
    CHECK(!slurp(a / "messages.csv").empty());

    // infeasible request is a data error
    CHECK(run("generate --out " + (dir / "c").string() + " --users 50 --count 10") == 1);
}

int main(int argc, char** argv) {
    if (argc > 1) g_cli = argv[1];
    if (g_cli.empty()) {
        std::fprintf(stderr, "usage: test_cli <path-to-forumnet-binary>\n");
        return 1;
    }
    doctest::Context ctx;
    return ctx.run();
}
