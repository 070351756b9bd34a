#pragma once

#include <string>
#include <vector>

namespace satev {

// Minimal RFC 4180 CSV support. Fields are byte strings (UTF-8 passes
// through untouched). Quoted fields may contain commas, doubled quotes,
// and newlines; both LF and CRLF row terminators are accepted.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

// Quotes a field only when it contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

std::string csv_join(const std::vector<std::string>& fields);

} // namespace satev
