#include <doctest.h>

#include "forumnet/structural.hpp"
#include "test_util.hpp"

using namespace forumnet;
using testutil::graph_from_arcs;

TEST_CASE("directed path summary") {
    auto g = graph_from_arcs({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    auto s = network_summary(g, Direction::directed);
    REQUIRE(s.adarp.has_value());
    CHECK(*s.adarp == doctest::Approx(4.0 / 3.0));
    CHECK(*s.diameter == 2);
    CHECK(s.avg_degree == doctest::Approx(2.0 * 2 / 3));
}

TEST_CASE("symmetric triangle") {
    auto g = graph_from_arcs({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"b", "c"},
                                               {"c", "b"}, {"a", "c"}, {"c", "a"}});
    auto s = network_summary(g, Direction::directed);
    CHECK(s.clustering == doctest::Approx(1.0));
    CHECK(*s.adarp == doctest::Approx(1.0));
    CHECK(*s.diameter == 1);
}

TEST_CASE("isolated nodes: ADARP and diameter missing") {
    auto g = graph_from_arcs({"a", "b", "c"}, {});
    auto s = network_summary(g, Direction::directed);
    CHECK(!s.adarp.has_value());
    CHECK(!s.diameter.has_value());
    CHECK(s.clustering == 0.0);
    CHECK(s.avg_degree == 0.0);
}

TEST_CASE("empty graph summary") {
    auto s = network_summary(ForumGraph::build({}), Direction::directed);
    CHECK(s.n == 0);
    CHECK(!s.adarp.has_value());
}

TEST_CASE("adding an isolated node") {
    auto g = graph_from_arcs({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
    auto g2 = graph_from_arcs({"a", "b", "c", "zz"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
    auto s1 = network_summary(g, Direction::directed);
    auto s2 = network_summary(g2, Direction::directed);
    CHECK(*s1.adarp == *s2.adarp);
    CHECK(*s1.diameter == *s2.diameter);
    CHECK(s1.clustering == s2.clustering);
    CHECK(s2.avg_degree < s1.avg_degree);
}

TEST_CASE("degree semantics") {
    auto g = graph_from_arcs({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    CHECK(g.degree(g.index_of("b"), Direction::directed) == 2);
    // Reciprocated pair: directed counts both sides, projection one.
    auto r = graph_from_arcs({"a", "b"}, {{"a", "b"}, {"b", "a"}});
    CHECK(r.degree(r.index_of("a"), Direction::directed) == 2);
    CHECK(r.degree(r.index_of("a"), Direction::undirected_projection) == 1);
}

TEST_CASE("star closeness with the disconnected-graph correction") {
    std::vector<std::pair<std::string, std::string>> arcs;
    for (const char* leaf : {"l1", "l2", "l3", "l4"}) {
        arcs.emplace_back("hub", leaf);
        arcs.emplace_back(leaf, "hub");
    }
    auto g = graph_from_arcs({"hub", "l1", "l2", "l3", "l4"}, arcs);
    auto c = closeness_centrality(g, Direction::directed);
    CHECK(c[g.index_of("hub")] == doctest::Approx(1.0));
    CHECK(c[g.index_of("l1")] == doctest::Approx(4.0 / 7.0));  // distances 1,2,2,2
}

TEST_CASE("summary metrics match the brute-force oracle on random digraphs") {
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        auto g = testutil::random_digraph(seed);
        for (auto dir : {Direction::directed, Direction::undirected_projection}) {
            auto s = network_summary(g, dir);
            auto o = testutil::summary_oracle(g, dir);
            REQUIRE(s.adarp.has_value() == o.has_pairs);
            if (o.has_pairs) {
                CHECK(*s.adarp == doctest::Approx(o.adarp).epsilon(1e-9));
                CHECK(*s.diameter == o.diameter);
            }
            CHECK(s.clustering == doctest::Approx(o.clustering).epsilon(1e-9));
            auto c = closeness_centrality(g, dir);
            for (int v = 0; v < g.node_count(); ++v) {
                CHECK(c[v] == doctest::Approx(o.closeness[v]).epsilon(1e-9));
                CHECK(c[v] >= 0.0);
                CHECK(c[v] <= 1.0 + 1e-12);
            }
        }
    }
}
