#include "forumnet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <fmt/core.h>

namespace forumnet {

RemovalStrategy parse_strategy(const std::string& token) {
    RemovalStrategy s;
    s.label = token;
    size_t pos = 0;
    while (pos <= token.size()) {
        size_t plus = token.find('+', pos);
        std::string part = token.substr(pos, plus == std::string::npos ? plus : plus - pos);
        StrategyPart sp;
        if (part == "top1") sp = {StrategyPart::Kind::top_percentile, 0.01};
        else if (part == "top5") sp = {StrategyPart::Kind::top_percentile, 0.05};
        else if (part == "top10") sp = {StrategyPart::Kind::top_percentile, 0.10};
        else if (part.rfind("top:", 0) == 0) {
            sp.kind = StrategyPart::Kind::top_percentile;
            try {
                sp.p = std::stod(part.substr(4));
            } catch (...) {
                sp.p = 0.0;
            }
            if (!(sp.p > 0.0 && sp.p < 1.0))
                throw std::invalid_argument(
                    fmt::format("strategy \"{}\": percentile must be in (0,1)", part));
        } else if (part == "bottom") sp = {StrategyPart::Kind::bottom, 0.0};
        else if (part == "moderators") sp = {StrategyPart::Kind::moderators, 0.0};
        else if (part == "spammers") sp = {StrategyPart::Kind::spammers, 0.0};
        else
            throw std::invalid_argument(fmt::format(
                "unknown strategy token \"{}\" (valid: top1, top5, top10, top:<p>, bottom, "
                "moderators, spammers, joined with '+')",
                part));
        s.parts.push_back(sp);
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    return s;
}

std::vector<std::string> select_removal_set(const ForumGraph& g, const RemovalStrategy& strategy,
                                            const RoleLabels& labels) {
    const int n = g.node_count();
    std::set<std::string> selected;
    for (const auto& part : strategy.parts) {
        switch (part.kind) {
            case StrategyPart::Kind::top_percentile: {
                const int count = static_cast<int>(std::ceil(part.p * n));
                std::vector<int> order(n);
                for (int i = 0; i < n; ++i) order[i] = i;
                std::sort(order.begin(), order.end(), [&](int a, int b) {
                    int da = g.degree(a), db = g.degree(b);
                    if (da != db) return da > db;
                    return g.id_of(a) < g.id_of(b);
                });
                for (int i = 0; i < count && i < n; ++i) selected.insert(g.id_of(order[i]));
                break;
            }
            case StrategyPart::Kind::bottom:
                for (int u = 0; u < n; ++u)
                    if (g.degree(u) <= 1) selected.insert(g.id_of(u));
                break;
            case StrategyPart::Kind::moderators:
                if (labels.moderators.empty())
                    throw DataError("strategy needs moderators but the label set is empty");
                for (const auto& id : labels.moderators)
                    if (g.index_of(id) >= 0) selected.insert(id);
                break;
            case StrategyPart::Kind::spammers:
                if (labels.spammers.empty())
                    throw DataError("strategy needs spammers but the label set is empty");
                for (const auto& id : labels.spammers)
                    if (g.index_of(id) >= 0) selected.insert(id);
                break;
        }
    }
    return {selected.begin(), selected.end()};
}

ForumGraph apply_removal(const ForumGraph& g, const std::vector<std::string>& removed) {
    return g.without_nodes(removed);
}

std::vector<MessageEvent> filter_events(const std::vector<MessageEvent>& events,
                                        const std::vector<std::string>& removed) {
    std::unordered_set<std::string> gone(removed.begin(), removed.end());
    std::unordered_map<std::string, const std::string*> author_of;
    for (const auto& e : events) author_of[e.message_id] = &e.author_id;

    std::vector<MessageEvent> kept;
    std::unordered_set<std::string> kept_ids;
    for (const auto& e : events) {
        if (gone.count(e.author_id)) continue;
        if (!e.parent_id.empty()) {
            auto it = author_of.find(e.parent_id);
            if (it != author_of.end() && gone.count(*it->second)) continue;
        }
        kept.push_back(e);
        kept_ids.insert(e.message_id);
    }
    for (auto& e : kept)
        if (!e.parent_id.empty() && !kept_ids.count(e.parent_id)) e.parent_id.clear();
    return kept;
}

std::vector<StabilityReport> stability_analysis(const std::vector<MessageEvent>& events,
                                                const ForumGraph& g,
                                                const std::vector<NodeMetricsRecord>& original,
                                                const std::vector<RemovalStrategy>& strategies,
                                                const RoleLabels& labels,
                                                const MetricsConfig& cfg) {
    std::unordered_map<std::string, const NodeMetricsRecord*> orig_by_id;
    for (const auto& r : original) orig_by_id[r.node] = &r;
    const auto before = network_summary(g, cfg.direction);

    std::vector<StabilityReport> reports;
    for (const auto& strategy : strategies) {
        StabilityReport rep;
        rep.strategy = strategy.label;
        rep.before = before;
        auto removed = select_removal_set(g, strategy, labels);
        rep.removed_count = static_cast<int>(removed.size());
        rep.removed_pct = g.node_count() ? static_cast<double>(removed.size()) / g.node_count() : 0.0;
        auto reduced = apply_removal(g, removed);
        rep.after = network_summary(reduced, cfg.direction);
        auto reduced_events = filter_events(events, removed);
        auto reduced_metrics = compute_node_metrics(reduced_events, reduced, cfg);
        std::unordered_map<std::string, const NodeMetricsRecord*> red_by_id;
        for (const auto& r : reduced_metrics) red_by_id[r.node] = &r;

        for (const auto& col : metric_columns()) {
            MetricStability ms;
            ms.metric = col.name;
            std::vector<double> x, y;
            for (int u = 0; u < reduced.node_count(); ++u) {
                const auto& id = reduced.id_of(u);
                auto oit = orig_by_id.find(id);
                auto rit = red_by_id.find(id);
                if (oit == orig_by_id.end() || rit == red_by_id.end()) continue;
                auto ov = col.get(*oit->second);
                auto rv = col.get(*rit->second);
                if (!ov || !rv) continue;  // pairwise-complete
                x.push_back(*ov);
                y.push_back(*rv);
            }
            ms.pairs = x.size();
            std::string reason;
            ms.correlation = pearson(x, y, &reason);
            if (!ms.correlation) ms.undefined_reason = reason;
            rep.metrics.push_back(std::move(ms));
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

namespace {

std::string fmt_opt3(const std::optional<double>& v) {
    return v ? fmt::format("{:.3f}", *v) : std::string{};
}

void summary_row(std::ostream& out, const std::string& strategy, const std::string& count,
                 const std::string& pct, const NetworkSummary& s) {
    out << strategy << ", " << count << ", " << pct << ", " << fmt_opt3(s.adarp) << ", "
        << fmt::format("{:.3f}", s.clustering) << ", " << fmt::format("{:.3f}", s.avg_degree)
        << ", " << (s.diameter ? fmt::format("{}", *s.diameter) : std::string{}) << "\n";
}

}  // namespace

void render_network_summary(std::ostream& out, const NetworkSummary& full,
                            const std::vector<StabilityReport>& reports) {
    out << "strategy, removed_count, removed_pct, adarp, cc, ad, d\n";
    summary_row(out, "full_network", "-", "-", full);
    for (const auto& r : reports)
        summary_row(out, r.strategy, fmt::format("{}", r.removed_count),
                    fmt::format("{:.1f}%", 100.0 * r.removed_pct), r.after);
}

void render_stability(std::ostream& out, const std::vector<StabilityReport>& reports) {
    out << "metric";
    for (const auto& r : reports) out << ", " << r.strategy;
    out << "\n";
    for (size_t m = 0; m < metric_columns().size(); ++m) {
        out << metric_columns()[m].name;
        for (const auto& r : reports) {
            out << ", ";
            if (r.metrics[m].correlation)
                out << fmt::format("{:.3f}", r.metrics[m].correlation->r);
        }
        out << "\n";
    }
}

}  // namespace forumnet
