#include "forumnet/interaction.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include <omp.h>

namespace forumnet {

namespace {

struct ParentInfo {
    int author;
    Timestamp timestamp;
};

// message_id -> (author index, timestamp)
std::unordered_map<std::string, ParentInfo> message_index(const std::vector<MessageEvent>& events,
                                                          const ForumGraph& g) {
    std::unordered_map<std::string, ParentInfo> idx;
    idx.reserve(events.size());
    for (const auto& e : events)
        idx.emplace(e.message_id, ParentInfo{g.index_of(e.author_id), e.timestamp});
    return idx;
}

}  // namespace

ActivityStats activity_and_contribution(const std::vector<MessageEvent>& events,
                                        const ForumGraph& g) {
    const int n = g.node_count();
    ActivityStats st;
    st.sent.assign(n, 0);
    st.received.assign(n, 0);
    st.contribution_index.assign(n, std::nullopt);
    auto idx = message_index(events, g);
    for (const auto& e : events) {
        int author = g.index_of(e.author_id);
        st.sent[author]++;
        if (!e.parent_id.empty()) {
            auto it = idx.find(e.parent_id);
            if (it != idx.end() && it->second.author != author)
                st.received[it->second.author]++;
        }
    }
    for (int u = 0; u < n; ++u) {
        int total = st.sent[u] + st.received[u];
        if (total > 0)
            st.contribution_index[u] = static_cast<double>(st.sent[u] - st.received[u]) / total;
    }
    return st;
}

ResponseTimes response_times(const std::vector<MessageEvent>& events, const ForumGraph& g) {
    const int n = g.node_count();
    std::vector<double> ego_sum(n, 0.0), alter_sum(n, 0.0);
    std::vector<int> ego_cnt(n, 0), alter_cnt(n, 0);
    auto idx = message_index(events, g);
    for (const auto& e : events) {
        if (e.parent_id.empty()) continue;
        auto it = idx.find(e.parent_id);
        if (it == idx.end()) continue;
        int replier = g.index_of(e.author_id);
        int parent_author = it->second.author;
        if (replier == parent_author) continue;
        double delay = static_cast<double>(e.timestamp - it->second.timestamp);
        ego_sum[replier] += delay;
        ego_cnt[replier]++;
        alter_sum[parent_author] += delay;
        alter_cnt[parent_author]++;
    }
    ResponseTimes rt;
    rt.ego_art.assign(n, std::nullopt);
    rt.alter_art.assign(n, std::nullopt);
    for (int u = 0; u < n; ++u) {
        if (ego_cnt[u]) rt.ego_art[u] = ego_sum[u] / ego_cnt[u];
        if (alter_cnt[u]) rt.alter_art[u] = alter_sum[u] / alter_cnt[u];
    }
    return rt;
}

Nudges nudges(const std::vector<MessageEvent>& events, const ForumGraph& g) {
    const int n = g.node_count();
    // Pending ping count per ordered (pinger, answerer) pair. An answer
    // closes the pair's episode; an answer with no preceding ping closes
    // nothing.
    std::unordered_map<std::int64_t, int> pending;
    auto key = [n](int a, int u) { return static_cast<std::int64_t>(a) * n + u; };
    std::vector<double> ego_sum(n, 0.0), alter_sum(n, 0.0);
    std::vector<int> ego_cnt(n, 0), alter_cnt(n, 0);
    auto idx = message_index(events, g);
    for (const auto& e : events) {  // events are in (timestamp, id) order
        if (e.parent_id.empty()) continue;
        auto it = idx.find(e.parent_id);
        if (it == idx.end()) continue;
        int x = g.index_of(e.author_id);
        int y = it->second.author;
        if (x == y) continue;
        // x answers y's pings, if any
        auto pit = pending.find(key(y, x));
        if (pit != pending.end() && pit->second > 0) {
            ego_sum[y] += pit->second;
            ego_cnt[y]++;
            alter_sum[x] += pit->second;
            alter_cnt[x]++;
            pit->second = 0;
        }
        // ... and this reply is itself a ping toward y
        pending[key(x, y)]++;
    }
    Nudges nd;
    nd.ego_nudges.assign(n, std::nullopt);
    nd.alter_nudges.assign(n, std::nullopt);
    for (int u = 0; u < n; ++u) {
        if (ego_cnt[u]) nd.ego_nudges[u] = ego_sum[u] / ego_cnt[u];
        if (alter_cnt[u]) nd.alter_nudges[u] = alter_sum[u] / alter_cnt[u];
    }
    return nd;
}

std::vector<int> betweenness_oscillations(const std::vector<MessageEvent>& events,
                                          const ForumGraph& g, std::int64_t window_seconds,
                                          Direction dir) {
    if (window_seconds <= 0) throw std::invalid_argument("window length must be positive");
    const int n = g.node_count();
    std::vector<int> counts(n, 0);
    if (events.empty()) return counts;

    Timestamp t0 = events.front().timestamp, t1 = events.front().timestamp;
    for (const auto& e : events) {
        t0 = std::min(t0, e.timestamp);
        t1 = std::max(t1, e.timestamp);
    }
    const int windows = static_cast<int>((t1 - t0) / window_seconds) + 1;

    std::vector<std::vector<const MessageEvent*>> buckets(windows);
    for (const auto& e : events)
        buckets[(e.timestamp - t0) / window_seconds].push_back(&e);

    // series[w][node]; windows are independent.
    std::vector<std::vector<double>> series(windows);
#pragma omp parallel for schedule(dynamic)
    for (int w = 0; w < windows; ++w) {
        series[w].assign(n, 0.0);
        if (buckets[w].empty()) continue;
        std::vector<MessageEvent> sub;
        sub.reserve(buckets[w].size());
        for (const auto* e : buckets[w]) sub.push_back(*e);
        // Replies whose parent falls outside the window behave as openers
        // (build resolves parents within the window's events only).
        ForumGraph wg = ForumGraph::build(sub);
        auto b = betweenness(wg, dir);
        for (int v = 0; v < wg.node_count(); ++v) {
            int global = g.index_of(wg.id_of(v));
            if (global >= 0) series[w][global] = b[v];
        }
    }

    std::vector<double> compressed;
    for (int u = 0; u < n; ++u) {
        compressed.clear();
        for (int w = 0; w < windows; ++w) {
            if (compressed.empty() || compressed.back() != series[w][u])
                compressed.push_back(series[w][u]);
        }
        int extrema = 0;
        for (size_t i = 1; i + 1 < compressed.size(); ++i) {
            if ((compressed[i] > compressed[i - 1] && compressed[i] > compressed[i + 1]) ||
                (compressed[i] < compressed[i - 1] && compressed[i] < compressed[i + 1]))
                extrema++;
        }
        counts[u] = extrema;
    }
    return counts;
}

}  // namespace forumnet
