#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "forumnet/events.hpp"

namespace forumnet {

enum class LogFormat { delimited_table, line_delimited_records };

struct ParseResult {
    std::vector<MessageEvent> events;   // timestamp order, ties by message_id
    std::vector<std::string> diagnostics;
    std::size_t input_records = 0;
    std::size_t rejected = 0;
};

// Parses a message log. Rejected records get a diagnostic; records whose
// parent_id points nowhere are kept and demoted to thread-openers.
// Duplicate message ids are fatal.
ParseResult parse_message_log(std::istream& in, LogFormat format = LogFormat::delimited_table);

// Serializes accepted events back to the delimited-table format. Parsing
// the result reproduces the events exactly.
void write_message_log(std::ostream& out, const std::vector<MessageEvent>& events);

struct RosterResult {
    Roster roster;
    std::vector<std::string> diagnostics;  // e.g. roster authors with no node
};

// Two-column table: author_id, role. Conflicting duplicates are fatal.
// When `known_authors` is given, roster authors that never posted are
// flagged in diagnostics (they create no graph node).
RosterResult parse_roster(std::istream& in,
                          const std::vector<std::string>& known_authors = {});

void write_roster(std::ostream& out, const Roster& roster);

}  // namespace forumnet
