#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "textlevel/util/error.hpp"

namespace textlevel::csv {

using Row = std::vector<std::string>;

// RFC-4180 style field splitting for one physical line (no embedded newlines).
inline Row parse_line(std::string_view line, std::size_t line_no = 0, const std::string& file = {}) {
    Row fields;
    std::string cur;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty() && !was_quoted) {
            quoted = was_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
            was_quoted = false;
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (quoted) throw ResourceError(file, line_no, "unterminated quoted field");
    fields.push_back(std::move(cur));
    return fields;
}

inline std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string format_row(const Row& row) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += quote(row[i]);
    }
    return out;
}

}  // namespace textlevel::csv
