#pragma once

#include <string>
#include <vector>

#include "forumnet/metrics.hpp"

namespace forumnet {

struct SpamDetectConfig {
    double activity_percentile = 0.99;  // condition (a) cut
    int max_nonspam_answers = 1;        // condition (b): "zero or few"
};

struct SpamVerdict {
    std::string node;
    bool cond_high_activity = false;   // (a)
    bool cond_few_answers = false;     // (b), counting non-spammer answerers only
    bool cond_spam_content = false;    // (c), from spam_label
    bool is_spammer = false;           // at least two conditions
    bool ci_consistent = false;        // contribution index > 0.7
};

struct SpamReport {
    std::vector<SpamVerdict> verdicts;  // node order
    std::vector<std::string> warnings;  // flagged spammers with CI <= 0.7
    int iterations = 0;
};

// Condition (b) is self-referential ("answers from users not identified as
// spammers"); resolved by a monotone fixed-point iteration capped at |V|
// rounds.
SpamReport detect_spammers(const std::vector<NodeMetricsRecord>& metrics,
                           const std::vector<MessageEvent>& events, const ForumGraph& g,
                           const SpamDetectConfig& cfg = {});

struct FingerprintRow {
    std::string metric;
    bool tested = false;
    std::string untested_reason;
    double mod_mean = 0.0, other_mean = 0.0;
    double t = 0.0, df = 0.0, p = 1.0;
    bool significant = false;       // p < .05
    std::string direction;          // "higher" | "lower"
};

// One Welch test per node-level metric, moderators vs everyone else,
// pairwise-complete.
std::vector<FingerprintRow> moderator_fingerprint(const std::vector<NodeMetricsRecord>& metrics,
                                                  const Roster& roster);

void write_fingerprint(std::ostream& out, const std::vector<FingerprintRow>& rows);

struct CandidateScore {
    std::string node;
    double composite = 0.0;  // mean of direction-signed z-scores
};

struct CandidateRanking {
    std::vector<CandidateScore> ranked;      // composite descending, ties by id
    std::vector<std::string> diagnostics;    // metrics dropped for zero variance
};

CandidateRanking rank_moderator_candidates(const std::vector<NodeMetricsRecord>& metrics);

void write_candidates(std::ostream& out, const CandidateRanking& ranking);

}  // namespace forumnet
