#pragma once

// Minimal RFC-4180-style CSV reading/writing. Fields containing the
// separator, quotes or newlines are quoted; embedded quotes are doubled.

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace forumnet::csv {

// Reads one record, honoring quoted fields that may span lines.
// Returns false at end of stream.
inline bool read_record(std::istream& in, std::vector<std::string>& out) {
    out.clear();
    int c = in.get();
    if (c == EOF) return false;
    std::string field;
    bool quoted = false;
    while (true) {
        if (c == EOF) break;
        char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                int next = in.peek();
                if (next == '"') {
                    in.get();
                    field += '"';
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
        } else if (ch == '"' && field.empty()) {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            break;
        } else if (ch != '\r') {
            field += ch;
        }
        c = in.get();
    }
    out.push_back(std::move(field));
    return true;
}

inline std::string escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        else q += c;
    }
    q += '"';
    return q;
}

inline void write_record(std::ostream& out, const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

}  // namespace forumnet::csv
