#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "forumnet/graph.hpp"

namespace forumnet {

// Fallback word-polarity lexicon used when events carry no sentiment
// column. A word assigned both polarities is a fatal config error.
struct Lexicon {
    std::unordered_map<std::string, bool> positive;  // word -> is_positive

    static Lexicon parse(std::istream& in);
};

// Lowercase, split on non-alphanumeric runs, drop tokens shorter than 2.
std::vector<std::string> tokenize(const std::string& text);

// Per-message sentiment, aligned with `events`. Input sentiment passes
// through unchanged; otherwise the lexicon scorer applies to the text:
// 0.5 with no hits, else (1 + (p-n)/(p+n))/2. No sentiment and no text
// gives missing.
std::vector<std::optional<double>> score_sentiment(const std::vector<MessageEvent>& events,
                                                   const Lexicon& lexicon = {});

struct SemanticScores {
    std::vector<std::optional<double>> sentiment;     // mean over authored messages
    std::vector<std::optional<double>> emotionality;  // population std dev
    std::vector<std::optional<double>> complexity;    // mean surprisal -ln p(w)
};

SemanticScores node_semantics(const std::vector<MessageEvent>& events, const ForumGraph& g,
                              const std::vector<std::optional<double>>& message_sentiment);

}  // namespace forumnet
