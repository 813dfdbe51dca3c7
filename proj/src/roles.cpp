#include "forumnet/roles.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_map>

#include <fmt/core.h>

#include "forumnet/csv.hpp"
#include "forumnet/stats.hpp"

namespace forumnet {

SpamReport detect_spammers(const std::vector<NodeMetricsRecord>& metrics,
                           const std::vector<MessageEvent>& events, const ForumGraph& g,
                           const SpamDetectConfig& cfg) {
    const int n = g.node_count();
    SpamReport report;
    report.verdicts.resize(n);
    if (n == 0) return report;

    // (a): activity at or above the configured upper percentile.
    std::vector<int> sorted_activity(n);
    for (int u = 0; u < n; ++u) sorted_activity[u] = metrics[u].activity;
    std::sort(sorted_activity.begin(), sorted_activity.end());
    const int rank = std::max(0, static_cast<int>(std::ceil(cfg.activity_percentile * n)) - 1);
    const int activity_cut = sorted_activity[rank];

    // (c): any authored message carries a true spam label.
    std::vector<bool> labeled(n, false);
    for (const auto& e : events)
        if (e.spam_label && *e.spam_label) labeled[g.index_of(e.author_id)] = true;

    // Answerer lists per node, for the non-spammer answer count in (b).
    std::unordered_map<std::string, int> author_of;
    for (const auto& e : events) author_of[e.message_id] = g.index_of(e.author_id);
    std::vector<std::vector<int>> answerers(n);
    for (const auto& e : events) {
        if (e.parent_id.empty()) continue;
        auto it = author_of.find(e.parent_id);
        if (it == author_of.end()) continue;
        int replier = g.index_of(e.author_id);
        if (replier != it->second) answerers[it->second].push_back(replier);
    }

    std::vector<bool> spam(n, false);
    auto evaluate = [&](int u, SpamVerdict& v) {
        v.node = g.id_of(u);
        v.cond_high_activity = metrics[u].activity >= activity_cut;
        v.cond_spam_content = labeled[u];
        int nonspam_answers = 0;
        for (int a : answerers[u])
            if (!spam[a]) nonspam_answers++;
        v.cond_few_answers = nonspam_answers <= cfg.max_nonspam_answers;
        int met = (v.cond_high_activity ? 1 : 0) + (v.cond_few_answers ? 1 : 0) +
                  (v.cond_spam_content ? 1 : 0);
        v.is_spammer = met >= 2;
    };

    // Least fixed point: excluding answers from detected spammers only adds
    // spammers, so the set grows monotonically.
    bool converged = false;
    while (report.iterations <= n) {
        report.iterations++;
        bool changed = false;
        std::vector<bool> next(n);
        for (int u = 0; u < n; ++u) {
            evaluate(u, report.verdicts[u]);
            next[u] = report.verdicts[u].is_spammer;
            if (next[u] != spam[u]) changed = true;
        }
        spam = std::move(next);
        if (!changed) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::string unstable;
        for (int u = 0; u < n; ++u)
            if (spam[u]) unstable += g.id_of(u) + " ";
        throw DataError(fmt::format("spammer detection did not converge; unstable set: {}", unstable));
    }
    for (int u = 0; u < n; ++u) {
        auto& v = report.verdicts[u];
        v.ci_consistent =
            metrics[u].contribution_index && *metrics[u].contribution_index > 0.7;
        if (v.is_spammer && !v.ci_consistent)
            report.warnings.push_back(fmt::format(
                "detected spammer \"{}\" has contribution index <= 0.7", v.node));
    }
    return report;
}

std::vector<FingerprintRow> moderator_fingerprint(const std::vector<NodeMetricsRecord>& metrics,
                                                  const Roster& roster) {
    std::vector<FingerprintRow> rows;
    for (const auto& col : metric_columns()) {
        FingerprintRow row;
        row.metric = col.name;
        std::vector<double> mods, others;
        for (const auto& r : metrics) {
            auto v = col.get(r);
            if (!v) continue;  // pairwise-complete
            (roster.role_of(r.node) == Role::moderator ? mods : others).push_back(*v);
        }
        if (mods.size() < 2 || others.size() < 2) {
            row.untested_reason = fmt::format("group sizes {} vs {}", mods.size(), others.size());
            rows.push_back(std::move(row));
            continue;
        }
        auto res = welch_t_test(mods, others);
        row.tested = true;
        row.mod_mean = 0.0;
        for (double v : mods) row.mod_mean += v;
        row.mod_mean /= static_cast<double>(mods.size());
        for (double v : others) row.other_mean += v;
        row.other_mean /= static_cast<double>(others.size());
        row.t = res.t;
        row.df = res.df;
        row.p = res.p_two_sided;
        row.significant = row.p < 0.05;
        row.direction = row.mod_mean >= row.other_mean ? "higher" : "lower";
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_fingerprint(std::ostream& out, const std::vector<FingerprintRow>& rows) {
    csv::write_record(out, {"metric", "mod_mean", "other_mean", "t", "df", "p", "significant",
                            "direction"});
    for (const auto& r : rows) {
        if (!r.tested) {
            csv::write_record(out, {r.metric, "", "", "", "", "",
                                    fmt::format("untested ({})", r.untested_reason), ""});
            continue;
        }
        csv::write_record(out, {r.metric, fmt::format("{:.6g}", r.mod_mean),
                                fmt::format("{:.6g}", r.other_mean), fmt::format("{:.4f}", r.t),
                                fmt::format("{:.2f}", r.df), fmt::format("{:.6g}", r.p),
                                r.significant ? "true" : "false", r.direction});
    }
}

namespace {

struct RankedMetric {
    const char* name;
    double sign;  // +1 when moderators run higher, -1 when lower
    std::function<std::optional<double>(const NodeMetricsRecord&)> get;
};

const std::vector<RankedMetric>& ranking_metrics() {
    static const std::vector<RankedMetric> m = {
        {"betweenness", +1.0,
         [](const NodeMetricsRecord& r) { return std::optional<double>(r.betweenness); }},
        {"betweenness_oscillations", +1.0,
         [](const NodeMetricsRecord& r) {
             return std::optional<double>(r.betweenness_oscillations);
         }},
        {"degree", +1.0,
         [](const NodeMetricsRecord& r) { return std::optional<double>(r.degree); }},
        {"sent", +1.0, [](const NodeMetricsRecord& r) { return std::optional<double>(r.sent); }},
        {"received", +1.0,
         [](const NodeMetricsRecord& r) { return std::optional<double>(r.received); }},
        {"alter_nudges", +1.0, [](const NodeMetricsRecord& r) { return r.alter_nudges; }},
        {"complexity", +1.0, [](const NodeMetricsRecord& r) { return r.complexity; }},
        {"emotionality", -1.0, [](const NodeMetricsRecord& r) { return r.emotionality; }},
        {"contribution_index", -1.0,
         [](const NodeMetricsRecord& r) { return r.contribution_index; }},
        {"ego_nudges", -1.0, [](const NodeMetricsRecord& r) { return r.ego_nudges; }},
    };
    return m;
}

}  // namespace

CandidateRanking rank_moderator_candidates(const std::vector<NodeMetricsRecord>& metrics) {
    const std::size_t n = metrics.size();
    CandidateRanking out;
    std::vector<double> composite(n, 0.0);
    std::vector<int> used(n, 0);
    for (const auto& rm : ranking_metrics()) {
        std::vector<double> values;
        std::vector<std::size_t> index;
        for (std::size_t u = 0; u < n; ++u) {
            auto v = rm.get(metrics[u]);
            if (v) {
                values.push_back(*v);
                index.push_back(u);
            }
        }
        auto z = values.empty() ? std::nullopt : zscores(values);
        if (!z) {
            out.diagnostics.push_back(
                fmt::format("metric {} excluded from composite (zero variance)", rm.name));
            continue;
        }
        for (std::size_t i = 0; i < index.size(); ++i) {
            composite[index[i]] += rm.sign * (*z)[i];
            used[index[i]]++;
        }
    }
    for (std::size_t u = 0; u < n; ++u) {
        out.ranked.push_back(
            {metrics[u].node, used[u] ? composite[u] / used[u] : 0.0});
    }
    std::sort(out.ranked.begin(), out.ranked.end(), [](const auto& a, const auto& b) {
        if (a.composite != b.composite) return a.composite > b.composite;
        return a.node < b.node;
    });
    return out;
}

void write_candidates(std::ostream& out, const CandidateRanking& ranking) {
    csv::write_record(out, {"rank", "node", "composite"});
    for (std::size_t i = 0; i < ranking.ranked.size(); ++i)
        csv::write_record(out, {fmt::format("{}", i + 1), ranking.ranked[i].node,
                                fmt::format("{:.6g}", ranking.ranked[i].composite)});
}

}  // namespace forumnet
