#include "idp/glob.hpp"

#include <string>

#include "idp/error.hpp"

namespace idp {

namespace {

// Returns the index just past the closing ']' or npos when unterminated.
std::size_t class_end(std::string_view p, std::size_t i) {
    std::size_t j = i + 1;
    if (j < p.size() && (p[j] == '!' || p[j] == '^')) {
        ++j;
    }
    if (j < p.size() && p[j] == ']') {
        ++j;
    }
    while (j < p.size() && p[j] != ']') {
        ++j;
    }
    return j < p.size() ? j + 1 : std::string_view::npos;
}

bool class_matches(std::string_view set, char c) {
    // `set` excludes the surrounding brackets
    bool negate = false;
    std::size_t i = 0;
    if (!set.empty() && (set[0] == '!' || set[0] == '^')) {
        negate = true;
        i = 1;
    }
    bool hit = false;
    for (; i < set.size(); ++i) {
        if (i + 2 < set.size() && set[i + 1] == '-') {
            if (c >= set[i] && c <= set[i + 2]) {
                hit = true;
            }
            i += 2;
        } else if (set[i] == c) {
            hit = true;
        }
    }
    return hit != negate;
}

bool match(std::string_view p, std::string_view s) {
    std::size_t pi = 0;
    std::size_t si = 0;
    while (pi < p.size()) {
        if (p.compare(pi, 2, "**") == 0) {
            std::size_t rest = pi + 2;
            const bool slash = rest < p.size() && p[rest] == '/';
            if (slash) {
                ++rest;
            }
            const auto tail = p.substr(rest);
            // "**/" may match zero segments
            for (std::size_t k = si; k <= s.size(); ++k) {
                if ((k == si || s[k - 1] == '/' || !slash) && match(tail, s.substr(k))) {
                    return true;
                }
            }
            return false;
        }
        const char c = p[pi];
        if (c == '*') {
            const auto tail = p.substr(pi + 1);
            for (std::size_t k = si; k <= s.size(); ++k) {
                if (match(tail, s.substr(k))) {
                    return true;
                }
                if (k < s.size() && s[k] == '/') {
                    break;
                }
            }
            return false;
        }
        if (si >= s.size()) {
            return false;
        }
        if (c == '?') {
            if (s[si] == '/') {
                return false;
            }
        } else if (c == '[') {
            const std::size_t end = class_end(p, pi);
            if (s[si] == '/' || !class_matches(p.substr(pi + 1, end - pi - 2), s[si])) {
                return false;
            }
            pi = end;
            ++si;
            continue;
        } else if (c != s[si]) {
            return false;
        }
        ++pi;
        ++si;
    }
    return si == s.size();
}

} // namespace

void validate_glob(std::string_view pattern) {
    if (pattern.empty()) {
        throw ConfigError("empty glob pattern");
    }
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (pattern[i] == '[') {
            const std::size_t end = class_end(pattern, i);
            if (end == std::string_view::npos) {
                throw ConfigError("unterminated '[' in glob pattern '" + std::string(pattern) + "'");
            }
            i = end - 1;
        }
    }
}

bool glob_match(std::string_view pattern, std::string_view path) { return match(pattern, path); }

} // namespace idp
