#include "forumnet/semantic.hpp"

#include <cctype>
#include <cmath>
#include <istream>

#include <fmt/core.h>

#include "forumnet/csv.hpp"

namespace forumnet {

Lexicon Lexicon::parse(std::istream& in) {
    Lexicon lex;
    std::vector<std::string> row;
    bool first = true;
    while (csv::read_record(in, row)) {
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != 2)
            throw DataError(fmt::format("lexicon row has {} fields, expected 2", row.size()));
        if (first && row[0] == "word" && row[1] == "polarity") {
            first = false;
            continue;
        }
        first = false;
        bool positive;
        if (row[1] == "positive") positive = true;
        else if (row[1] == "negative") positive = false;
        else
            throw DataError(
                fmt::format("lexicon: polarity \"{}\" for \"{}\" (allowed: positive, negative)",
                            row[1], row[0]));
        auto [it, inserted] = lex.positive.emplace(row[0], positive);
        if (!inserted && it->second != positive)
            throw DataError(fmt::format("lexicon: word \"{}\" assigned both polarities", row[0]));
    }
    return lex;
}

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            cur += static_cast<char>(std::tolower(c));
        } else if (!cur.empty()) {
            if (cur.size() >= 2) tokens.push_back(cur);
            cur.clear();
        }
    }
    if (cur.size() >= 2) tokens.push_back(cur);
    return tokens;
}

std::vector<std::optional<double>> score_sentiment(const std::vector<MessageEvent>& events,
                                                   const Lexicon& lexicon) {
    std::vector<std::optional<double>> out(events.size());
    for (size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        if (e.sentiment) {
            out[i] = e.sentiment;
        } else if (!e.text.empty()) {
            int pos = 0, neg = 0;
            for (const auto& w : tokenize(e.text)) {
                auto it = lexicon.positive.find(w);
                if (it == lexicon.positive.end()) continue;
                (it->second ? pos : neg)++;
            }
            out[i] = pos + neg == 0
                         ? 0.5
                         : (1.0 + static_cast<double>(pos - neg) / (pos + neg)) / 2.0;
        }
    }
    return out;
}

SemanticScores node_semantics(const std::vector<MessageEvent>& events, const ForumGraph& g,
                              const std::vector<std::optional<double>>& message_sentiment) {
    const int n = g.node_count();
    SemanticScores s;
    s.sentiment.assign(n, std::nullopt);
    s.emotionality.assign(n, std::nullopt);
    s.complexity.assign(n, std::nullopt);

    // Corpus-wide word frequencies for the surprisal scores.
    std::unordered_map<std::string, std::int64_t> word_count;
    std::int64_t total_tokens = 0;
    for (const auto& e : events) {
        for (const auto& w : tokenize(e.text)) {
            word_count[w]++;
            total_tokens++;
        }
    }

    std::vector<double> sent_sum(n, 0.0), sent_sq(n, 0.0), cx_sum(n, 0.0);
    std::vector<int> sent_cnt(n, 0), cx_cnt(n, 0);
    for (size_t i = 0; i < events.size(); ++i) {
        int u = g.index_of(events[i].author_id);
        if (message_sentiment[i]) {
            double v = *message_sentiment[i];
            sent_sum[u] += v;
            sent_sq[u] += v * v;
            sent_cnt[u]++;
        }
        auto tokens = tokenize(events[i].text);
        if (!tokens.empty()) {
            double surprisal = 0.0;
            for (const auto& w : tokens)
                surprisal += -std::log(static_cast<double>(word_count[w]) / total_tokens);
            cx_sum[u] += surprisal / tokens.size();
            cx_cnt[u]++;
        }
    }
    for (int u = 0; u < n; ++u) {
        if (sent_cnt[u]) {
            double mean = sent_sum[u] / sent_cnt[u];
            s.sentiment[u] = mean;
            double var = sent_sq[u] / sent_cnt[u] - mean * mean;
            s.emotionality[u] = std::sqrt(std::max(0.0, var));
        }
        if (cx_cnt[u]) s.complexity[u] = cx_sum[u] / cx_cnt[u];
    }
    return s;
}

}  // namespace forumnet
