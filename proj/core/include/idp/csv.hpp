#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace idp::csv {

/// Quotes a field when it contains a separator, quote or line break.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Reads one logical record (quoted fields may span lines). Lines starting
/// with '#' outside a record are comments and are skipped. Returns nullopt at
/// end of input. `line` is advanced past the consumed physical lines.
std::optional<std::vector<std::string>> read_row(std::istream& in, std::size_t& line);

} // namespace idp::csv
