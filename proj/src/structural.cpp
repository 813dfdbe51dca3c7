#include "forumnet/structural.hpp"

#include <algorithm>
#include <cstdint>

#include <omp.h>

namespace forumnet {

double global_clustering(const ForumGraph& g) {
    const int n = g.node_count();
    std::vector<std::vector<int>> adj(n);
    for (int u = 0; u < n; ++u) adj[u] = g.neighbors(u, Direction::undirected_projection);

    std::int64_t closed = 0, triples = 0;  // closed counts each triangle 6x (ordered)
#pragma omp parallel for reduction(+ : closed, triples) schedule(dynamic)
    for (int u = 0; u < n; ++u) {
        const auto& nu = adj[u];
        const std::int64_t d = static_cast<std::int64_t>(nu.size());
        triples += d * (d - 1);
        for (int v : nu) {
            for (int w : nu) {
                if (w == v) continue;
                if (std::binary_search(adj[v].begin(), adj[v].end(), w)) closed++;
            }
        }
    }
    // closed/triples == 3*triangles / connected-triple count
    return triples == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(triples);
}

NetworkSummary network_summary(const ForumGraph& g, Direction dir) {
    NetworkSummary s;
    s.n = g.node_count();
    s.arc_count = g.arc_count();
    if (s.n == 0) return s;
    s.avg_degree = 2.0 * s.arc_count / s.n;
    s.clustering = global_clustering(g);

    std::int64_t reachable_pairs = 0, dist_sum = 0;
    int max_dist = 0;
#pragma omp parallel for reduction(+ : reachable_pairs, dist_sum) \
    reduction(max : max_dist) schedule(dynamic)
    for (int u = 0; u < s.n; ++u) {
        auto dist = shortest_path_lengths(g, u, dir);
        for (int v = 0; v < s.n; ++v) {
            if (v == u || dist[v] == kUnreachable) continue;
            reachable_pairs++;
            dist_sum += dist[v];
            max_dist = std::max(max_dist, dist[v]);
        }
    }
    if (reachable_pairs > 0) {
        s.adarp = static_cast<double>(dist_sum) / static_cast<double>(reachable_pairs);
        s.diameter = max_dist;
    }
    return s;
}

std::vector<double> closeness_centrality(const ForumGraph& g, Direction dir) {
    const int n = g.node_count();
    std::vector<double> out(n, 0.0);
    if (n <= 1) return out;
#pragma omp parallel for schedule(dynamic)
    for (int u = 0; u < n; ++u) {
        auto dist = shortest_path_lengths(g, u, dir);
        std::int64_t sum = 0;
        int reachable = 0;
        for (int v = 0; v < n; ++v) {
            if (v == u || dist[v] == kUnreachable) continue;
            reachable++;
            sum += dist[v];
        }
        if (reachable > 0)
            out[u] = (static_cast<double>(reachable) / (n - 1)) *
                     (static_cast<double>(reachable) / static_cast<double>(sum));
    }
    return out;
}

NodeCentralities node_centralities(const ForumGraph& g, Direction dir) {
    NodeCentralities c;
    const int n = g.node_count();
    c.degree.resize(n);
    for (int u = 0; u < n; ++u) c.degree[u] = g.degree(u, dir);
    c.closeness = closeness_centrality(g, dir);
    c.betweenness = betweenness(g, dir);
    return c;
}

}  // namespace forumnet
