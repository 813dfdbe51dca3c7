// Compares the serial and OpenMP betweenness kernels on a generated
// corpus and checks that their results are bit-identical.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "forumnet/graph.hpp"
#include "forumnet/synthgen.hpp"

using namespace forumnet;
using Clock = std::chrono::steady_clock;

int main(int argc, char** argv) {
    SynthConfig cfg;
    cfg.n_users = argc > 1 ? std::atoi(argv[1]) : 3000;
    cfg.n_messages = cfg.n_users * 20;
    cfg.n_moderators = cfg.n_users / 50;
    cfg.n_spammers = cfg.n_users / 100;
    cfg.seed = 7;

    auto corpus = generate_forum(cfg);
    auto g = ForumGraph::build(corpus.events);
    std::printf("graph: %d nodes, %d arcs, %d threads\n", g.node_count(), g.arc_count(),
                omp_get_max_threads());

    auto t0 = Clock::now();
    auto serial = betweenness_serial(g, Direction::directed);
    auto t1 = Clock::now();
    auto parallel = betweenness(g, Direction::directed);
    auto t2 = Clock::now();

    bool identical = true;
    for (int v = 0; v < g.node_count(); ++v)
        if (serial[v] != parallel[v]) identical = false;

    auto ms = [](auto a, auto b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };
    std::printf("serial:   %9.1f ms\n", ms(t0, t1));
    std::printf("parallel: %9.1f ms  (%.2fx)\n", ms(t1, t2), ms(t0, t1) / ms(t1, t2));
    std::printf("bit-identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
