#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forumnet/metrics.hpp"
#include "forumnet/stats.hpp"
#include "forumnet/structural.hpp"

namespace forumnet {

struct StrategyPart {
    enum class Kind { top_percentile, bottom, moderators, spammers };
    Kind kind;
    double p = 0.0;  // top_percentile only, in (0,1)
};

struct RemovalStrategy {
    std::string label;  // e.g. "top1+bottom"
    std::vector<StrategyPart> parts;
};

// Token grammar: top1 | top5 | top10 | top:<p> | bottom | moderators |
// spammers, joined with '+'. Unknown tokens are an error (usage class).
RemovalStrategy parse_strategy(const std::string& token);

// Label sets for the strategies that need them.
struct RoleLabels {
    std::vector<std::string> moderators;
    std::vector<std::string> spammers;
};

// Simultaneous-attack semantics: every part is evaluated on the original
// graph, then the union is deduplicated. top_percentile(p) selects exactly
// ceil(p*n) highest-degree nodes, ties at the cut by ascending id; bottom
// selects nodes with total degree <= 1.
std::vector<std::string> select_removal_set(const ForumGraph& g, const RemovalStrategy& strategy,
                                            const RoleLabels& labels);

// Deletes the nodes and incident arcs; survivors keep identity.
ForumGraph apply_removal(const ForumGraph& g, const std::vector<std::string>& removed);

// Events surviving a removal: author survives and, for replies, the parent
// author survives. Replies whose parent message was itself dropped are
// demoted to thread-openers.
std::vector<MessageEvent> filter_events(const std::vector<MessageEvent>& events,
                                        const std::vector<std::string>& removed);

struct MetricStability {
    std::string metric;
    std::optional<PearsonResult> correlation;
    std::string undefined_reason;
    std::size_t pairs = 0;
};

struct StabilityReport {
    std::string strategy;
    int removed_count = 0;
    double removed_pct = 0.0;
    NetworkSummary before, after;
    std::vector<MetricStability> metrics;
};

// Full sweep: select, remove, recompute all node-level metrics on the
// reduced corpus, and correlate each metric's surviving-node vector with
// the original (pairwise-complete by node id).
std::vector<StabilityReport> stability_analysis(const std::vector<MessageEvent>& events,
                                                const ForumGraph& g,
                                                const std::vector<NodeMetricsRecord>& original,
                                                const std::vector<RemovalStrategy>& strategies,
                                                const RoleLabels& labels,
                                                const MetricsConfig& cfg);

// Table-1-shaped rows: strategy, removed_count, removed_pct, adarp, cc,
// ad, d. Three decimals for reals, integers for counts and diameter.
void render_network_summary(std::ostream& out, const NetworkSummary& full,
                            const std::vector<StabilityReport>& reports);

// Table-2 shape: one row per metric, one column per strategy.
void render_stability(std::ostream& out, const std::vector<StabilityReport>& reports);

}  // namespace forumnet
