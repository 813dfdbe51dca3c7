#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace forumnet {

// Seconds since the Unix epoch, UTC, 1-second resolution.
using Timestamp = std::int64_t;

// Parses "YYYY-MM-DDThh:mm:ssZ". Returns nullopt on any deviation.
std::optional<Timestamp> parse_iso8601_utc(const std::string& s);
std::string format_iso8601_utc(Timestamp t);

struct MessageEvent {
    std::string message_id;
    std::string thread_id;
    std::string parent_id;  // empty = thread-opening post
    std::string author_id;
    Timestamp timestamp = 0;
    std::optional<double> sentiment;  // in [0,1] when present
    std::optional<bool> spam_label;
    std::string text;

    bool is_reply() const { return !parent_id.empty(); }
};

enum class Role { regular, moderator, spammer };

const char* role_name(Role r);
std::optional<Role> role_from_name(const std::string& s);

struct Roster {
    std::unordered_map<std::string, Role> roles;

    Role role_of(const std::string& author) const {
        auto it = roles.find(author);
        return it == roles.end() ? Role::regular : it->second;
    }
    std::vector<std::string> with_role(Role r) const;
};

// Fatal input problem (duplicate ids, unreadable files, conflicting roster
// rows). The CLI maps this to exit code 1.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace forumnet
