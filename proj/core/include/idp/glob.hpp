#pragma once

#include <string_view>

namespace idp {

/// Matches a `/`-separated relative path against a glob. `*` and `?` stay
/// within one path segment, `**` spans any number of segments (including
/// none), and `[abc]` / `[!a-z]` match one character from a set.
bool glob_match(std::string_view pattern, std::string_view path);

/// Throws ConfigError for an empty pattern or an unterminated `[` set.
void validate_glob(std::string_view pattern);

} // namespace idp
