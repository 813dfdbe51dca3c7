#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "forumnet/graph.hpp"
#include "forumnet/semantic.hpp"

namespace forumnet {

// The full per-node metric vector (structural + interaction + semantic).
struct NodeMetricsRecord {
    std::string node;
    int activity = 0;  // == sent
    int sent = 0;
    int received = 0;
    std::optional<double> contribution_index;
    int degree = 0;
    double closeness = 0.0;
    double betweenness = 0.0;
    int betweenness_oscillations = 0;
    std::optional<double> ego_art, alter_art;
    std::optional<double> ego_nudges, alter_nudges;
    std::optional<double> sentiment, emotionality, complexity;
};

struct MetricsConfig {
    Direction direction = Direction::directed;
    std::int64_t oscillation_window_seconds = 7 * 86400;
    Lexicon lexicon;
};

// One record per graph node, in node-index (lexicographic id) order.
std::vector<NodeMetricsRecord> compute_node_metrics(const std::vector<MessageEvent>& events,
                                                    const ForumGraph& g,
                                                    const MetricsConfig& cfg);

// The node-level variables tested and correlated, Table-2 style.
struct MetricColumn {
    const char* name;
    std::function<std::optional<double>(const NodeMetricsRecord&)> get;
};

const std::vector<MetricColumn>& metric_columns();

void write_node_metrics(std::ostream& out, const std::vector<NodeMetricsRecord>& records);

}  // namespace forumnet
