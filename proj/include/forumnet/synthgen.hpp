#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forumnet/events.hpp"

namespace forumnet {

struct SynthConfig {
    int n_users = 1000;
    int n_messages = 6000;
    int n_moderators = 20;
    int n_spammers = 10;
    double attachment = 50.0;           // community-choice smoothing constant
    double moderator_reply_mult = 6.0;  // reply-rate multiplier, > 1
    double moderator_delay_div = 4.0;   // response-delay divisor, > 1
    double spammer_rate_mult = 12.0;    // post-rate multiplier, > 1
    double open_thread_prob = 0.10;     // non-spammer chance of opening a thread
    double triadic_prob = 0.45;         // chance a reply closes a triangle
    std::int64_t span_seconds = 240LL * 86400;  // ~8 months
    std::int64_t start_timestamp = 1456790400;  // 2016-03-01T00:00:00Z
    std::uint64_t seed = 42;
};

struct SynthCorpus {
    std::vector<MessageEvent> events;  // valid ingest input, (timestamp, id) order
    Roster roster;
};

// Seeded community-structured forum corpus with planted moderator/spammer
// behavior. Roughly one in a hundred users hosts a community; members mostly
// answer their host or one fixed conversational partner, so triangles close
// through hosts and author degrees are heavy-tailed. Spammers only broadcast
// and are never chosen as targets; moderators reply more, faster, and across
// communities. Identical config and seed give byte-identical corpora
// (mt19937_64 with in-house draws only).
SynthCorpus generate_forum(const SynthConfig& config);

}  // namespace forumnet
