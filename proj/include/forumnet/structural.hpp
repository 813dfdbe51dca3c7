#pragma once

#include <optional>
#include <vector>

#include "forumnet/graph.hpp"

namespace forumnet {

struct NetworkSummary {
    int n = 0;
    int arc_count = 0;
    std::optional<double> adarp;    // mean geodesic over ordered reachable pairs
    std::optional<int> diameter;    // max finite geodesic
    double clustering = 0.0;        // global transitivity, undirected projection
    double avg_degree = 0.0;        // 2 * arc_count / n
};

// ADARP and diameter honor `dir`; clustering is always computed on the
// undirected projection.
NetworkSummary network_summary(const ForumGraph& g, Direction dir);

struct NodeCentralities {
    std::vector<int> degree;
    std::vector<double> closeness;    // reachable-count corrected, in [0,1]
    std::vector<double> betweenness;
};

NodeCentralities node_centralities(const ForumGraph& g, Direction dir);

// Closeness with the disconnected-graph correction
// C(u) = (r/(n-1)) * (r / sum of distances to reachable nodes).
std::vector<double> closeness_centrality(const ForumGraph& g, Direction dir);

double global_clustering(const ForumGraph& g);

}  // namespace forumnet
