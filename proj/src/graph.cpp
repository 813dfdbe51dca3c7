#include "forumnet/graph.hpp"

#include <algorithm>
#include <queue>

#include <fmt/core.h>
#include <omp.h>

namespace forumnet {

int ForumGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> ForumGraph::neighbors(int node, Direction) const {
    std::vector<int> nbrs;
    for (auto [v, w] : out_[node]) nbrs.push_back(v);
    for (auto [v, w] : in_[node]) nbrs.push_back(v);
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    return nbrs;
}

int ForumGraph::degree(int node, Direction dir) const {
    if (dir == Direction::undirected_projection)
        return static_cast<int>(neighbors(node, dir).size());
    // Directed: distinct in-neighbors plus distinct out-neighbors.
    return static_cast<int>(in_[node].size() + out_[node].size());
}

void ForumGraph::add_arc(int from, int to) {
    for (auto& [v, w] : out_[from]) {
        if (v == to) {
            w++;
            for (auto& [u, w2] : in_[to])
                if (u == from) w2++;
            return;
        }
    }
    out_[from].emplace_back(to, 1);
    in_[to].emplace_back(from, 1);
    arc_count_++;
}

void ForumGraph::finalize() {
    for (auto& a : out_) std::sort(a.begin(), a.end());
    for (auto& a : in_) std::sort(a.begin(), a.end());
}

ForumGraph ForumGraph::build(const std::vector<MessageEvent>& events) {
    ForumGraph g;
    std::vector<std::string> authors;
    for (const auto& e : events) authors.push_back(e.author_id);
    std::sort(authors.begin(), authors.end());
    authors.erase(std::unique(authors.begin(), authors.end()), authors.end());
    g.ids_ = std::move(authors);
    for (int i = 0; i < static_cast<int>(g.ids_.size()); ++i) g.index_[g.ids_[i]] = i;
    g.out_.resize(g.ids_.size());
    g.in_.resize(g.ids_.size());
    g.messages_.resize(g.ids_.size());

    std::unordered_map<std::string, int> author_of_message;
    for (const auto& e : events) author_of_message[e.message_id] = g.index_[e.author_id];

    for (const auto& e : events) {
        int author = g.index_[e.author_id];
        g.messages_[author].push_back(e.message_id);
        if (e.parent_id.empty()) continue;
        auto it = author_of_message.find(e.parent_id);
        if (it == author_of_message.end()) continue;  // window slicing can orphan replies
        int target = it->second;
        if (target == author) continue;  // self-replies create no arc
        g.add_arc(author, target);
    }
    g.finalize();
    return g;
}

ForumGraph ForumGraph::without_nodes(const std::vector<std::string>& removed) const {
    std::vector<bool> drop(ids_.size(), false);
    for (const auto& id : removed) {
        int idx = index_of(id);
        if (idx < 0) throw DataError(fmt::format("removal set names unknown node \"{}\"", id));
        drop[idx] = true;
    }
    ForumGraph g;
    std::vector<int> remap(ids_.size(), -1);
    for (size_t i = 0; i < ids_.size(); ++i) {
        if (drop[i]) continue;
        remap[i] = static_cast<int>(g.ids_.size());
        g.ids_.push_back(ids_[i]);
    }
    for (int i = 0; i < static_cast<int>(g.ids_.size()); ++i) g.index_[g.ids_[i]] = i;
    g.out_.resize(g.ids_.size());
    g.in_.resize(g.ids_.size());
    g.messages_.resize(g.ids_.size());
    for (size_t i = 0; i < ids_.size(); ++i) {
        if (drop[i]) continue;
        g.messages_[remap[i]] = messages_[i];
        for (auto [v, w] : out_[i]) {
            if (drop[v]) continue;
            g.out_[remap[i]].emplace_back(remap[v], w);
            g.in_[remap[v]].emplace_back(remap[i], w);
            g.arc_count_++;
        }
    }
    g.finalize();
    return g;
}

namespace {

// Plain adjacency for traversals; projection symmetrizes.
std::vector<std::vector<int>> traversal_adjacency(const ForumGraph& g, Direction dir) {
    std::vector<std::vector<int>> adj(g.node_count());
    for (int u = 0; u < g.node_count(); ++u) {
        for (auto [v, w] : g.out_arcs(u)) adj[u].push_back(v);
        if (dir == Direction::undirected_projection)
            for (auto [v, w] : g.in_arcs(u)) adj[u].push_back(v);
        std::sort(adj[u].begin(), adj[u].end());
        adj[u].erase(std::unique(adj[u].begin(), adj[u].end()), adj[u].end());
    }
    return adj;
}

std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int source) {
    std::vector<int> dist(adj.size(), kUnreachable);
    std::queue<int> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u]) {
            if (dist[v] == kUnreachable) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
        }
    }
    return dist;
}

// One Brandes pass; adds source-s dependencies into `delta_out`.
void brandes_source(const std::vector<std::vector<int>>& adj, int s,
                    std::vector<double>& delta_out) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> dist(n, kUnreachable);
    std::vector<double> sigma(n, 0.0), delta(n, 0.0);
    std::vector<std::vector<int>> preds(n);
    std::vector<int> order;
    order.reserve(n);
    dist[s] = 0;
    sigma[s] = 1.0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        order.push_back(u);
        for (int v : adj[u]) {
            if (dist[v] == kUnreachable) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
            if (dist[v] == dist[u] + 1) {
                sigma[v] += sigma[u];
                preds[v].push_back(u);
            }
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int w = *it;
        for (int u : preds[w]) delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
        if (w != s) delta_out[w] += delta[w];
    }
}

}  // namespace

std::vector<int> shortest_path_lengths(const ForumGraph& g, int source, Direction dir) {
    if (source < 0 || source >= g.node_count()) throw DataError("unknown source node");
    return bfs(traversal_adjacency(g, dir), source);
}

std::vector<int> shortest_path_lengths(const ForumGraph& g, const std::string& source,
                                       Direction dir) {
    int idx = g.index_of(source);
    if (idx < 0) throw DataError(fmt::format("unknown source node \"{}\"", source));
    return shortest_path_lengths(g, idx, dir);
}

ComponentPartition connected_components(const ForumGraph& g, ComponentMode mode) {
    const int n = g.node_count();
    ComponentPartition p;
    p.component_of.assign(n, -1);
    if (mode == ComponentMode::weak) {
        auto adj = traversal_adjacency(g, Direction::undirected_projection);
        int comp = 0;
        for (int s = 0; s < n; ++s) {
            if (p.component_of[s] != -1) continue;
            std::vector<int> members;
            std::queue<int> q;
            q.push(s);
            p.component_of[s] = comp;
            while (!q.empty()) {
                int u = q.front();
                q.pop();
                members.push_back(u);
                for (int v : adj[u]) {
                    if (p.component_of[v] == -1) {
                        p.component_of[v] = comp;
                        q.push(v);
                    }
                }
            }
            std::sort(members.begin(), members.end());
            p.members.push_back(std::move(members));
            comp++;
        }
    } else {
        // Kosaraju; component ids renumbered by smallest member for
        // deterministic output.
        std::vector<int> order;
        order.reserve(n);
        std::vector<bool> visited(n, false);
        for (int s = 0; s < n; ++s) {
            if (visited[s]) continue;
            std::vector<std::pair<int, size_t>> stack{{s, 0}};
            visited[s] = true;
            while (!stack.empty()) {
                auto& [u, i] = stack.back();
                const auto& arcs = g.out_arcs(u);
                if (i < arcs.size()) {
                    int v = arcs[i++].first;
                    if (!visited[v]) {
                        visited[v] = true;
                        stack.emplace_back(v, 0);
                    }
                } else {
                    order.push_back(u);
                    stack.pop_back();
                }
            }
        }
        int comp = 0;
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            if (p.component_of[*it] != -1) continue;
            std::vector<int> members;
            std::queue<int> q;
            q.push(*it);
            p.component_of[*it] = comp;
            while (!q.empty()) {
                int u = q.front();
                q.pop();
                members.push_back(u);
                for (auto [v, w] : g.in_arcs(u)) {
                    if (p.component_of[v] == -1) {
                        p.component_of[v] = comp;
                        q.push(v);
                    }
                }
            }
            std::sort(members.begin(), members.end());
            p.members.push_back(std::move(members));
            comp++;
        }
    }
    for (size_t c = 0; c < p.members.size(); ++c) {
        if (p.largest == -1 ||
            p.members[c].size() > p.members[p.largest].size() ||
            (p.members[c].size() == p.members[p.largest].size() &&
             p.members[c].front() < p.members[p.largest].front()))
            p.largest = static_cast<int>(c);
    }
    return p;
}

std::vector<double> betweenness(const ForumGraph& g, Direction dir) {
    const int n = g.node_count();
    std::vector<double> score(n, 0.0);
    if (n == 0) return score;
    auto adj = traversal_adjacency(g, dir);

    // Sources are processed in fixed blocks; each source writes its own
    // slot, then slots are summed in source order. The summation order is
    // therefore independent of thread count.
    const int block = 64;
    std::vector<std::vector<double>> slot(block);
    for (int base = 0; base < n; base += block) {
        const int count = std::min(block, n - base);
        for (int i = 0; i < count; ++i) slot[i].assign(n, 0.0);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < count; ++i) brandes_source(adj, base + i, slot[i]);
        for (int i = 0; i < count; ++i)
            for (int v = 0; v < n; ++v) score[v] += slot[i][v];
    }
    return score;
}

std::vector<double> betweenness_serial(const ForumGraph& g, Direction dir) {
    const int n = g.node_count();
    std::vector<double> score(n, 0.0);
    auto adj = traversal_adjacency(g, dir);
    std::vector<double> delta(n);
    for (int s = 0; s < n; ++s) {
        delta.assign(n, 0.0);
        brandes_source(adj, s, delta);
        for (int v = 0; v < n; ++v) score[v] += delta[v];
    }
    return score;
}

}  // namespace forumnet
