#include "forumnet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

#include <fmt/core.h>
#include <json.hpp>

#include "forumnet/csv.hpp"

namespace forumnet {

namespace {

// Days-from-civil / civil-from-days (Howard Hinnant's algorithms); avoids
// timegm and locale-dependent parsing.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yy + (m <= 2));
}

bool parse_uint(const std::string& s, size_t pos, size_t len, int& out) {
    if (pos + len > s.size()) return false;
    out = 0;
    for (size_t i = pos; i < pos + len; ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        out = out * 10 + (s[i] - '0');
    }
    return true;
}

constexpr const char* kHeader[] = {"message_id", "thread_id", "parent_id", "author_id",
                                   "timestamp",  "sentiment", "spam_label", "text"};

std::optional<double> parse_sentiment(const std::string& s, bool& bad) {
    bad = false;
    if (s.empty()) return std::nullopt;
    double v;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v < 0.0 || v > 1.0) {
        bad = true;
        return std::nullopt;
    }
    return v;
}

std::optional<bool> parse_bool(const std::string& s, bool& bad) {
    bad = false;
    if (s.empty()) return std::nullopt;
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    bad = true;
    return std::nullopt;
}

std::string format_double(double v) {
    return fmt::format("{}", v);  // shortest round-trip representation
}

}  // namespace

std::optional<Timestamp> parse_iso8601_utc(const std::string& s) {
    // YYYY-MM-DDThh:mm:ssZ, fixed width 20
    if (s.size() != 20 || s[4] != '-' || s[7] != '-' || s[10] != 'T' ||
        s[13] != ':' || s[16] != ':' || s[19] != 'Z')
        return std::nullopt;
    int y, mo, d, h, mi, se;
    if (!parse_uint(s, 0, 4, y) || !parse_uint(s, 5, 2, mo) || !parse_uint(s, 8, 2, d) ||
        !parse_uint(s, 11, 2, h) || !parse_uint(s, 14, 2, mi) || !parse_uint(s, 17, 2, se))
        return std::nullopt;
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60)
        return std::nullopt;
    return days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d)) * 86400 +
           h * 3600 + mi * 60 + se;
}

std::string format_iso8601_utc(Timestamp t) {
    std::int64_t days = t / 86400;
    std::int64_t sod = t % 86400;
    if (sod < 0) {
        sod += 86400;
        days -= 1;
    }
    int y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", y, m, d, sod / 3600,
                       (sod % 3600) / 60, sod % 60);
}

const char* role_name(Role r) {
    switch (r) {
        case Role::moderator: return "moderator";
        case Role::spammer: return "spammer";
        default: return "regular";
    }
}

std::optional<Role> role_from_name(const std::string& s) {
    if (s == "moderator") return Role::moderator;
    if (s == "spammer") return Role::spammer;
    if (s == "regular") return Role::regular;
    return std::nullopt;
}

std::vector<std::string> Roster::with_role(Role r) const {
    std::vector<std::string> out;
    for (const auto& [id, role] : roles)
        if (role == r) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Field-level validation shared by both input formats.
void accept_record(ParseResult& res, MessageEvent ev, bool bad_sentiment, bool bad_label,
                   bool bad_timestamp, size_t record_no) {
    if (ev.message_id.empty()) {
        res.diagnostics.push_back(fmt::format("record {}: empty message_id, rejected", record_no));
        res.rejected++;
        return;
    }
    if (bad_timestamp) {
        res.diagnostics.push_back(
            fmt::format("record {} ({}): malformed timestamp, rejected", record_no, ev.message_id));
        res.rejected++;
        return;
    }
    if (bad_sentiment) {
        res.diagnostics.push_back(fmt::format(
            "record {} ({}): sentiment outside [0,1] or malformed, rejected", record_no, ev.message_id));
        res.rejected++;
        return;
    }
    if (bad_label) {
        res.diagnostics.push_back(
            fmt::format("record {} ({}): malformed spam_label, rejected", record_no, ev.message_id));
        res.rejected++;
        return;
    }
    if (ev.author_id.empty()) {
        res.diagnostics.push_back(
            fmt::format("record {} ({}): empty author_id, rejected", record_no, ev.message_id));
        res.rejected++;
        return;
    }
    res.events.push_back(std::move(ev));
}

void finish(ParseResult& res) {
    // Duplicate ids are fatal; order is (timestamp, message_id).
    std::unordered_set<std::string> seen;
    for (const auto& e : res.events) {
        if (!seen.insert(e.message_id).second)
            throw DataError(fmt::format("duplicate message_id \"{}\"", e.message_id));
    }
    std::stable_sort(res.events.begin(), res.events.end(),
                     [](const MessageEvent& a, const MessageEvent& b) {
                         if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                         return a.message_id < b.message_id;
                     });
    // Orphan replies demote to thread-openers so activity counts survive.
    std::unordered_map<std::string, const MessageEvent*> by_id;
    for (const auto& e : res.events) by_id.emplace(e.message_id, &e);
    for (auto& e : res.events) {
        if (e.parent_id.empty()) continue;
        auto it = by_id.find(e.parent_id);
        if (it == by_id.end()) {
            res.diagnostics.push_back(fmt::format(
                "message {}: parent \"{}\" unknown, demoted to thread-opener", e.message_id,
                e.parent_id));
            e.parent_id.clear();
        } else if (it->second->timestamp > e.timestamp) {
            res.diagnostics.push_back(fmt::format(
                "message {}: parent \"{}\" is later in time, demoted to thread-opener",
                e.message_id, e.parent_id));
            e.parent_id.clear();
        }
    }
}

}  // namespace

ParseResult parse_message_log(std::istream& in, LogFormat format) {
    ParseResult res;
    if (format == LogFormat::delimited_table) {
        std::vector<std::string> row;
        if (!csv::read_record(in, row)) throw DataError("message log is empty (no header)");
        if (row.size() != 8)
            throw DataError(fmt::format("message log header has {} fields, expected 8", row.size()));
        for (size_t i = 0; i < 8; ++i)
            if (row[i] != kHeader[i])
                throw DataError(fmt::format("message log header field {} is \"{}\", expected \"{}\"",
                                            i + 1, row[i], kHeader[i]));
        size_t record_no = 0;
        while (csv::read_record(in, row)) {
            if (row.size() == 1 && row[0].empty()) continue;  // trailing blank line
            record_no++;
            res.input_records++;
            if (row.size() != 8) {
                res.diagnostics.push_back(
                    fmt::format("record {}: {} fields, expected 8, rejected", record_no, row.size()));
                res.rejected++;
                continue;
            }
            MessageEvent ev;
            ev.message_id = row[0];
            ev.thread_id = row[1];
            ev.parent_id = row[2];
            ev.author_id = row[3];
            auto ts = parse_iso8601_utc(row[4]);
            if (ts) ev.timestamp = *ts;
            bool bad_sent, bad_label;
            ev.sentiment = parse_sentiment(row[5], bad_sent);
            ev.spam_label = parse_bool(row[6], bad_label);
            ev.text = row[7];
            accept_record(res, std::move(ev), bad_sent, bad_label, !ts.has_value(), record_no);
        }
    } else {
        std::string line;
        size_t record_no = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            record_no++;
            res.input_records++;
            nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object()) {
                res.diagnostics.push_back(
                    fmt::format("record {}: not a JSON object, rejected", record_no));
                res.rejected++;
                continue;
            }
            auto str = [&](const char* k) {
                return j.contains(k) && j[k].is_string() ? j[k].get<std::string>() : std::string{};
            };
            MessageEvent ev;
            ev.message_id = str("message_id");
            ev.thread_id = str("thread_id");
            ev.parent_id = str("parent_id");
            ev.author_id = str("author_id");
            auto ts = parse_iso8601_utc(str("timestamp"));
            if (ts) ev.timestamp = *ts;
            bool bad_sent = false, bad_label = false;
            if (j.contains("sentiment") && !j["sentiment"].is_null()) {
                if (j["sentiment"].is_number()) {
                    double v = j["sentiment"].get<double>();
                    if (v < 0.0 || v > 1.0) bad_sent = true;
                    else ev.sentiment = v;
                } else {
                    bad_sent = true;
                }
            }
            if (j.contains("spam_label") && !j["spam_label"].is_null()) {
                if (j["spam_label"].is_boolean()) ev.spam_label = j["spam_label"].get<bool>();
                else bad_label = true;
            }
            ev.text = str("text");
            accept_record(res, std::move(ev), bad_sent, bad_label, !ts.has_value(), record_no);
        }
    }
    finish(res);
    return res;
}

void write_message_log(std::ostream& out, const std::vector<MessageEvent>& events) {
    csv::write_record(out, {kHeader, kHeader + 8});
    for (const auto& e : events) {
        csv::write_record(out, {e.message_id, e.thread_id, e.parent_id, e.author_id,
                                format_iso8601_utc(e.timestamp),
                                e.sentiment ? format_double(*e.sentiment) : "",
                                e.spam_label ? (*e.spam_label ? "true" : "false") : "", e.text});
    }
}

RosterResult parse_roster(std::istream& in, const std::vector<std::string>& known_authors) {
    RosterResult res;
    std::vector<std::string> row;
    bool first = true;
    while (csv::read_record(in, row)) {
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != 2)
            throw DataError(fmt::format("roster row has {} fields, expected 2", row.size()));
        if (first && row[0] == "author_id" && row[1] == "role") {
            first = false;
            continue;  // optional header
        }
        first = false;
        auto role = role_from_name(row[1]);
        if (!role)
            throw DataError(fmt::format(
                "roster: unknown role \"{}\" for \"{}\" (allowed: moderator, spammer, regular)",
                row[1], row[0]));
        auto [it, inserted] = res.roster.roles.emplace(row[0], *role);
        if (!inserted && it->second != *role)
            throw DataError(fmt::format("roster: author \"{}\" listed with conflicting roles", row[0]));
    }
    if (!known_authors.empty()) {
        std::unordered_set<std::string> known(known_authors.begin(), known_authors.end());
        std::set<std::string> missing;
        for (const auto& [id, _] : res.roster.roles)
            if (!known.count(id)) missing.insert(id);
        for (const auto& id : missing)
            res.diagnostics.push_back(fmt::format("roster author \"{}\" never posted: no node", id));
    }
    return res;
}

void write_roster(std::ostream& out, const Roster& roster) {
    csv::write_record(out, {"author_id", "role"});
    std::vector<std::string> ids;
    for (const auto& [id, _] : roster.roles) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    for (const auto& id : ids)
        csv::write_record(out, {id, role_name(roster.roles.at(id))});
}

}  // namespace forumnet
