#include "forumnet/metrics.hpp"

#include <ostream>

#include <fmt/core.h>

#include "forumnet/csv.hpp"
#include "forumnet/interaction.hpp"
#include "forumnet/structural.hpp"

namespace forumnet {

std::vector<NodeMetricsRecord> compute_node_metrics(const std::vector<MessageEvent>& events,
                                                    const ForumGraph& g,
                                                    const MetricsConfig& cfg) {
    const int n = g.node_count();
    auto cent = node_centralities(g, cfg.direction);
    auto act = activity_and_contribution(events, g);
    auto rt = response_times(events, g);
    auto nd = nudges(events, g);
    auto osc = betweenness_oscillations(events, g, cfg.oscillation_window_seconds, cfg.direction);
    auto msg_sent = score_sentiment(events, cfg.lexicon);
    auto sem = node_semantics(events, g, msg_sent);

    std::vector<NodeMetricsRecord> records(n);
    for (int u = 0; u < n; ++u) {
        auto& r = records[u];
        r.node = g.id_of(u);
        r.sent = act.sent[u];
        r.activity = act.sent[u];
        r.received = act.received[u];
        r.contribution_index = act.contribution_index[u];
        r.degree = cent.degree[u];
        r.closeness = cent.closeness[u];
        r.betweenness = cent.betweenness[u];
        r.betweenness_oscillations = osc[u];
        r.ego_art = rt.ego_art[u];
        r.alter_art = rt.alter_art[u];
        r.ego_nudges = nd.ego_nudges[u];
        r.alter_nudges = nd.alter_nudges[u];
        r.sentiment = sem.sentiment[u];
        r.emotionality = sem.emotionality[u];
        r.complexity = sem.complexity[u];
    }
    return records;
}

const std::vector<MetricColumn>& metric_columns() {
    static const std::vector<MetricColumn> cols = {
        {"alter_art", [](const NodeMetricsRecord& r) { return r.alter_art; }},
        {"ego_art", [](const NodeMetricsRecord& r) { return r.ego_art; }},
        {"alter_nudges", [](const NodeMetricsRecord& r) { return r.alter_nudges; }},
        {"ego_nudges", [](const NodeMetricsRecord& r) { return r.ego_nudges; }},
        {"activity",
         [](const NodeMetricsRecord& r) { return std::optional<double>(r.activity); }},
        {"contribution_index", [](const NodeMetricsRecord& r) { return r.contribution_index; }},
        {"betweenness",
         [](const NodeMetricsRecord& r) { return std::optional<double>(r.betweenness); }},
        {"betweenness_oscillations",
         [](const NodeMetricsRecord& r) {
             return std::optional<double>(r.betweenness_oscillations);
         }},
        {"closeness",
         [](const NodeMetricsRecord& r) { return std::optional<double>(r.closeness); }},
        {"degree", [](const NodeMetricsRecord& r) { return std::optional<double>(r.degree); }},
        {"sentiment", [](const NodeMetricsRecord& r) { return r.sentiment; }},
        {"emotionality", [](const NodeMetricsRecord& r) { return r.emotionality; }},
        {"complexity", [](const NodeMetricsRecord& r) { return r.complexity; }},
    };
    return cols;
}

void write_node_metrics(std::ostream& out, const std::vector<NodeMetricsRecord>& records) {
    std::vector<std::string> header = {"node", "sent", "received"};
    for (const auto& c : metric_columns()) header.push_back(c.name);
    csv::write_record(out, header);
    for (const auto& r : records) {
        std::vector<std::string> row = {r.node, fmt::format("{}", r.sent),
                                        fmt::format("{}", r.received)};
        for (const auto& c : metric_columns()) {
            auto v = c.get(r);
            row.push_back(v ? fmt::format("{:.6g}", *v) : "");
        }
        csv::write_record(out, row);
    }
}

}  // namespace forumnet
