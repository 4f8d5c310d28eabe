#include "idp/csv.hpp"

#include "idp/error.hpp"

namespace idp::csv {

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        out << escape(fields[i]);
    }
    out << '\n';
}

std::optional<std::vector<std::string>> read_row(std::istream& in, std::size_t& line) {
    std::string text;
    while (true) {
        if (!std::getline(in, text)) {
            return std::nullopt;
        }
        ++line;
        if (!text.empty() && text.back() == '\r') {
            text.pop_back();
        }
        if (!text.empty() && text.front() == '#') {
            continue;
        }
        if (text.empty()) {
            continue;
        }
        break;
    }
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    while (true) {
        if (i >= text.size()) {
            if (quoted) {
                std::string more;
                if (!std::getline(in, more)) {
                    throw SchemaError("line " + std::to_string(line) + ": unterminated quoted field");
                }
                ++line;
                if (!more.empty() && more.back() == '\r') {
                    more.pop_back();
                }
                field += '\n';
                text = std::move(more);
                i = 0;
                continue;
            }
            fields.push_back(std::move(field));
            return fields;
        }
        const char c = text[i++];
        if (quoted) {
            if (c == '"') {
                if (i < text.size() && text[i] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
}

} // namespace idp::csv
