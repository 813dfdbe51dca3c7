#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "forumnet/events.hpp"

namespace forumnet {

enum class Direction { directed, undirected_projection };
enum class ComponentMode { weak, strong };

constexpr int kUnreachable = -1;

// Directed weighted reply graph over author accounts. Node indices are
// assigned in lexicographic author_id order; immutable after build.
class ForumGraph {
public:
    int node_count() const { return static_cast<int>(ids_.size()); }
    int arc_count() const { return arc_count_; }

    const std::string& id_of(int node) const { return ids_[node]; }
    int index_of(const std::string& id) const;  // -1 when absent
    const std::vector<std::string>& node_ids() const { return ids_; }

    // (neighbor, weight) pairs, neighbor index ascending.
    const std::vector<std::pair<int, int>>& out_arcs(int node) const { return out_[node]; }
    const std::vector<std::pair<int, int>>& in_arcs(int node) const { return in_[node]; }

    // Distinct neighbors under the requested direction, index ascending.
    std::vector<int> neighbors(int node, Direction dir) const;
    int degree(int node, Direction dir = Direction::directed) const;

    // Message ids authored by the node, in (timestamp, id) order.
    const std::vector<std::string>& messages_of(int node) const { return messages_[node]; }

    static ForumGraph build(const std::vector<MessageEvent>& events);

    // Removes the given nodes and all incident arcs; survivors keep their
    // ids. Unknown ids are an error.
    ForumGraph without_nodes(const std::vector<std::string>& removed) const;

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<std::pair<int, int>>> out_, in_;
    std::vector<std::vector<std::string>> messages_;
    int arc_count_ = 0;

    void add_arc(int from, int to);
    void finalize();
};

// Hop distances from `source`; kUnreachable marks unreachable nodes.
std::vector<int> shortest_path_lengths(const ForumGraph& g, int source, Direction dir);
std::vector<int> shortest_path_lengths(const ForumGraph& g, const std::string& source,
                                       Direction dir);

struct ComponentPartition {
    std::vector<int> component_of;           // node -> component index
    std::vector<std::vector<int>> members;   // index ascending within each
    int largest = -1;                        // ties broken by smallest member id
};

ComponentPartition connected_components(const ForumGraph& g, ComponentMode mode);

// Brandes pair-dependency accumulation over ordered source-target pairs,
// endpoints excluded, unnormalized. OpenMP across sources with a fixed
// source-order reduction, so results are bit-identical at any thread count.
std::vector<double> betweenness(const ForumGraph& g, Direction dir);

// Single-threaded reference with the same accumulation order; kept for
// testing and the kernel benchmark.
std::vector<double> betweenness_serial(const ForumGraph& g, Direction dir);

}  // namespace forumnet
