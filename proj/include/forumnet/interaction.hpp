#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "forumnet/graph.hpp"

namespace forumnet {

struct ActivityStats {
    std::vector<int> sent;       // messages authored, openers included
    std::vector<int> received;   // replies by others to this node's messages
    std::vector<std::optional<double>> contribution_index;  // (s-r)/(s+r)
};

ActivityStats activity_and_contribution(const std::vector<MessageEvent>& events,
                                        const ForumGraph& g);

struct ResponseTimes {
    // Seconds; missing when the node authored/received no replies.
    std::vector<std::optional<double>> ego_art;
    std::vector<std::optional<double>> alter_art;
};

ResponseTimes response_times(const std::vector<MessageEvent>& events, const ForumGraph& g);

struct Nudges {
    // Mean pings per closed episode; missing without a closed episode.
    std::vector<std::optional<double>> ego_nudges;    // node as pinger
    std::vector<std::optional<double>> alter_nudges;  // node as answerer
};

Nudges nudges(const std::vector<MessageEvent>& events, const ForumGraph& g);

// Tumbling windows over the corpus time range; per-window betweenness
// series (0 where the node is absent), plateau-compressed, then strict
// interior local extrema counted.
std::vector<int> betweenness_oscillations(const std::vector<MessageEvent>& events,
                                          const ForumGraph& g, std::int64_t window_seconds,
                                          Direction dir);

}  // namespace forumnet
