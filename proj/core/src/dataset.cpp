#include "idp/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <unordered_map>

#include "idp/csv.hpp"
#include "idp/error.hpp"

namespace idp {

namespace {

constexpr std::array<std::string_view, 7> kIdentityColumns = {
    "project", "file_path", "type_name", "method_name", "param_signature", "snapshot", "faulty"};

std::string bool_field(bool v) { return v ? "1" : "0"; }

std::string where(std::string_view source, std::size_t line) {
    return std::string(source) + ":" + std::to_string(line);
}

std::optional<bool> parse_bool(std::string_view s) {
    if (s == "1" || s == "true" || s == "TRUE" || s == "True") {
        return true;
    }
    if (s == "0" || s == "false" || s == "FALSE" || s == "False") {
        return false;
    }
    return std::nullopt;
}

class HeaderIndex {
public:
    HeaderIndex(const std::vector<std::string>& header, std::string_view source) : source_(source) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (!index_.emplace(header[i], i).second) {
                throw SchemaError(std::string(source) + ": duplicate column '" + header[i] + "'");
            }
        }
    }

    std::size_t require(std::string_view column) const {
        const auto it = index_.find(std::string(column));
        if (it == index_.end()) {
            throw SchemaError(std::string(source_) + ": missing column '" + std::string(column) + "'");
        }
        return it->second;
    }

    bool has(std::string_view column) const { return index_.count(std::string(column)) != 0; }

private:
    std::string source_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct RowReader {
    const std::vector<std::string>& row;
    std::string_view source;
    std::size_t line;

    const std::string& at(std::size_t i) const { return row[i]; }

    std::int64_t count(std::size_t i, std::string_view column) const {
        const auto& s = row[i];
        std::int64_t v = 0;
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || end != s.data() + s.size() || v < 0) {
            throw SchemaError(where(source, line) + ": column '" + std::string(column) +
                              "' expects a non-negative integer, got '" + s + "'");
        }
        return v;
    }

    bool flag(std::size_t i, std::string_view column) const {
        const auto v = parse_bool(row[i]);
        if (!v) {
            throw SchemaError(where(source, line) + ": column '" + std::string(column) + "' expects 0/1, got '" +
                              row[i] + "'");
        }
        return *v;
    }
};

} // namespace

std::string_view snapshot_name(Snapshot snapshot) { return snapshot == Snapshot::Faulty ? "faulty" : "current"; }

std::vector<std::string> csv_columns() {
    std::vector<std::string> cols(kIdentityColumns.begin(), kIdentityColumns.end());
    for (std::size_t m = 0; m < kTertileMetricCount; ++m) {
        cols.emplace_back(tertile_metric_key(static_cast<TertileMetric>(m)));
    }
    for (const auto kind : all_construct_kinds()) {
        cols.emplace_back(construct_column(kind));
    }
    cols.emplace_back("all_conditions");
    cols.emplace_back("all_arithmetic");
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
        cols.emplace_back(category_column(c));
    }
    return cols;
}

void write_csv(std::ostream& out, std::span<const MethodRecord> records, std::string_view comment) {
    if (!comment.empty()) {
        out << "# " << comment << '\n';
    }
    csv::write_row(out, csv_columns());
    std::vector<std::string> row;
    for (const auto& r : records) {
        row.clear();
        row.push_back(r.identity.project);
        row.push_back(r.identity.file_path);
        row.push_back(r.identity.type_name);
        row.push_back(r.identity.method_name);
        row.push_back(r.identity.joined_signature());
        row.emplace_back(snapshot_name(r.snapshot));
        row.push_back(bool_field(r.faulty));
        for (std::size_t m = 0; m < kTertileMetricCount; ++m) {
            row.push_back(std::to_string(tertile_value(r.metrics, static_cast<TertileMetric>(m))));
        }
        for (const auto c : r.metrics.construct_counts) {
            row.push_back(std::to_string(c));
        }
        row.push_back(std::to_string(r.metrics.all_conditions()));
        row.push_back(std::to_string(r.metrics.all_arithmetic()));
        for (std::size_t c = 0; c < kCategoryCount; ++c) {
            row.push_back(bool_field(category_value(r.categories, c)));
        }
        csv::write_row(out, row);
    }
}

void write_csv(const std::filesystem::path& path, std::span<const MethodRecord> records, std::string_view comment) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("dataset-builder", "cannot open '" + path.string() + "' for writing");
    }
    write_csv(out, records, comment);
    if (!out) {
        throw Error("dataset-builder", "write failed for '" + path.string() + "'");
    }
}

Dataset read_csv(std::istream& in, std::string_view source_name) {
    std::size_t line = 0;
    const auto header = csv::read_row(in, line);
    if (!header) {
        throw SchemaError(std::string(source_name) + ": empty file, expected a header row");
    }
    const HeaderIndex index(*header, source_name);

    std::array<std::size_t, kIdentityColumns.size()> id_cols{};
    for (std::size_t i = 0; i < kIdentityColumns.size(); ++i) {
        id_cols[i] = index.require(kIdentityColumns[i]);
    }
    std::array<std::size_t, kTertileMetricCount> metric_cols{};
    for (std::size_t m = 0; m < kTertileMetricCount; ++m) {
        metric_cols[m] = index.require(tertile_metric_key(static_cast<TertileMetric>(m)));
    }
    std::array<std::size_t, kConstructKindCount> construct_cols{};
    for (const auto kind : all_construct_kinds()) {
        construct_cols[static_cast<std::size_t>(kind)] = index.require(construct_column(kind));
    }
    const std::size_t all_conditions_col = index.require("all_conditions");
    const std::size_t all_arithmetic_col = index.require("all_arithmetic");
    std::array<std::size_t, kCategoryCount> category_cols{};
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
        category_cols[c] = index.require(category_column(c));
    }

    Dataset out;
    while (true) {
        const std::size_t row_line = line + 1;
        auto row = csv::read_row(in, line);
        if (!row) {
            break;
        }
        if (row->size() != header->size()) {
            throw SchemaError(where(source_name, row_line) + ": expected " + std::to_string(header->size()) +
                              " fields, got " + std::to_string(row->size()));
        }
        const RowReader r{*row, source_name, row_line};
        MethodRecord rec;
        rec.identity.project = r.at(id_cols[0]);
        rec.identity.file_path = r.at(id_cols[1]);
        rec.identity.type_name = r.at(id_cols[2]);
        rec.identity.method_name = r.at(id_cols[3]);
        rec.identity.param_signature = split_signature(r.at(id_cols[4]));
        const auto& snap = r.at(id_cols[5]);
        if (snap == "current") {
            rec.snapshot = Snapshot::Current;
        } else if (snap == "faulty") {
            rec.snapshot = Snapshot::Faulty;
        } else {
            throw SchemaError(where(source_name, row_line) + ": column 'snapshot' expects current|faulty, got '" +
                              snap + "'");
        }
        rec.faulty = r.flag(id_cols[6], "faulty");
        if (rec.faulty && rec.snapshot != Snapshot::Faulty) {
            throw SchemaError(where(source_name, row_line) + ": faulty rows must use snapshot 'faulty'");
        }
        rec.metrics.sloc = r.count(metric_cols[0], "sloc");
        rec.metrics.cyclomatic_complexity = r.count(metric_cols[1], "cc");
        rec.metrics.max_nesting = r.count(metric_cols[2], "max_nesting");
        rec.metrics.max_chaining = r.count(metric_cols[3], "max_chaining");
        rec.metrics.unique_variable_ids = r.count(metric_cols[4], "unique_vars");
        for (const auto kind : all_construct_kinds()) {
            rec.metrics.count(kind) = r.count(construct_cols[static_cast<std::size_t>(kind)], construct_column(kind));
        }
        if (r.count(all_conditions_col, "all_conditions") != rec.metrics.all_conditions()) {
            throw SchemaError(where(source_name, row_line) +
                              ": column 'all_conditions' disagrees with if_conditions + switch_case_blocks + "
                              "ternary_operations");
        }
        if (r.count(all_arithmetic_col, "all_arithmetic") != rec.metrics.all_arithmetic()) {
            throw SchemaError(where(source_name, row_line) +
                              ": column 'all_arithmetic' disagrees with incrementations + decrementations + "
                              "arithmetic_infix_ops");
        }
        for (std::size_t c = 0; c < kCategoryCount; ++c) {
            category_value(rec.categories, c) = r.flag(category_cols[c], category_column(c));
        }
        rec.identity.is_constructor = rec.categories.is_constructor;
        out.push_back(std::move(rec));
    }
    return out;
}

Dataset read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("dataset-builder", "cannot open '" + path.string() + "'");
    }
    return read_csv(in, path.string());
}

std::vector<MethodIdentity> read_label_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("dataset-builder", "cannot open label file '" + path.string() + "'");
    }
    const std::string source = path.string();
    std::size_t line = 0;
    const auto header = csv::read_row(in, line);
    if (!header) {
        throw SchemaError(source + ": empty label file");
    }
    const HeaderIndex index(*header, source);
    const bool has_project = index.has("project");
    const std::size_t project_col = has_project ? index.require("project") : 0;
    const std::size_t file_col = index.require("file_path");
    const std::size_t type_col = index.require("type_name");
    const std::size_t method_col = index.require("method_name");
    const std::size_t sig_col = index.require("param_signature");
    const std::size_t faulty_col = index.require("faulty");

    std::vector<MethodIdentity> out;
    while (true) {
        const std::size_t row_line = line + 1;
        auto row = csv::read_row(in, line);
        if (!row) {
            break;
        }
        if (row->size() != header->size()) {
            throw SchemaError(where(source, row_line) + ": expected " + std::to_string(header->size()) +
                              " fields, got " + std::to_string(row->size()));
        }
        const RowReader r{*row, source, row_line};
        if (!r.flag(faulty_col, "faulty")) {
            continue;
        }
        MethodIdentity id;
        if (has_project) {
            id.project = r.at(project_col);
        }
        id.file_path = r.at(file_col);
        id.type_name = r.at(type_col);
        id.method_name = r.at(method_col);
        id.param_signature = split_signature(r.at(sig_col));
        out.push_back(std::move(id));
    }
    return out;
}

Instance make_instance(const MethodRecord& record, const DiscretizationModel& model) {
    return Instance{record.identity, itemize(record, model), record.faulty, record.snapshot, record.metrics.sloc};
}

std::vector<Instance> consolidate_faulty(std::span<const Instance> faulty) {
    std::map<MethodIdentity, std::vector<const Instance*>> groups;
    for (const auto& inst : faulty) {
        groups[inst.identity].push_back(&inst);
    }
    const auto& vocabulary = Vocabulary::standard();
    std::vector<Instance> out;
    out.reserve(groups.size());
    for (const auto& [identity, members] : groups) {
        if (members.size() == 1) {
            out.push_back(*members.front());
            continue;
        }
        Instance merged;
        merged.identity = identity;
        merged.faulty = true;
        merged.snapshot = Snapshot::Faulty;
        merged.items.vocabulary_id = members.front()->items.vocabulary_id;
        for (const auto& attr : vocabulary.attributes()) {
            if (attr.width == 1) {
                std::size_t yes = 0;
                for (const auto* m : members) {
                    yes += m->items.items.test(attr.first) ? 1 : 0;
                }
                // ties resolve to true
                merged.items.items.set(attr.first, 2 * yes >= members.size());
                continue;
            }
            std::vector<std::size_t> votes(attr.width, 0);
            for (const auto* m : members) {
                for (std::size_t k = 0; k < attr.width; ++k) {
                    if (m->items.items.test(attr.first + k)) {
                        ++votes[k];
                    }
                }
            }
            // ties resolve to the higher class
            std::size_t best = 0;
            for (std::size_t k = 1; k < attr.width; ++k) {
                if (votes[k] >= votes[best]) {
                    best = k;
                }
            }
            merged.items.items.set(attr.first + best);
        }
        std::vector<std::int64_t> slocs;
        for (const auto* m : members) {
            slocs.push_back(m->sloc);
        }
        std::sort(slocs.begin(), slocs.end());
        merged.sloc = slocs[slocs.size() / 2];
        out.push_back(std::move(merged));
    }
    return out;
}

UnifyResult unify(std::span<const Instance> all, std::span<const Instance> faulty) {
    std::set<MethodIdentity> faulty_ids;
    for (const auto& f : faulty) {
        faulty_ids.insert(f.identity);
    }
    std::set<MethodIdentity> all_ids;
    UnifyResult result;
    for (const auto& a : all) {
        all_ids.insert(a.identity);
        if (faulty_ids.count(a.identity) == 0) {
            result.instances.push_back(a);
        }
    }
    for (const auto& f : faulty) {
        if (all_ids.count(f.identity) == 0) {
            result.warnings.push_back("faulty method " + f.identity.type_name + "." + f.identity.method_name + "(" +
                                      f.identity.joined_signature() + ") in " + f.identity.file_path +
                                      " has no current-state counterpart; kept as deleted method");
        }
        result.instances.push_back(f);
    }
    std::stable_sort(result.instances.begin(), result.instances.end(),
                     [](const Instance& a, const Instance& b) { return a.identity < b.identity; });
    return result;
}

std::vector<MethodRecord> unified_rows(std::span<const MethodRecord> rows) {
    std::set<MethodIdentity> faulty_ids;
    for (const auto& r : rows) {
        if (r.faulty) {
            faulty_ids.insert(r.identity);
        }
    }
    std::vector<MethodRecord> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.faulty || faulty_ids.count(r.identity) == 0) {
            out.push_back(r);
        }
    }
    return out;
}

PreparedInstances prepare_instances(std::span<const MethodRecord> rows, const DiscretizationModel& model) {
    std::vector<Instance> current;
    std::vector<Instance> faulty;
    for (const auto& r : rows) {
        (r.faulty ? faulty : current).push_back(make_instance(r, model));
    }
    const auto consolidated = consolidate_faulty(faulty);
    auto unified = unify(current, consolidated);
    PreparedInstances out;
    out.instances = std::move(unified.instances);
    // One row per fault-labeled method without a current-state row is the
    // normal shape of single-snapshot data, so report a count, not a flood.
    if (!unified.warnings.empty()) {
        out.warnings.push_back(std::to_string(unified.warnings.size()) +
                               " faulty method(s) have no current-state row and were kept as-is");
    }
    return out;
}

std::vector<std::pair<MethodIdentity, bool>> labeled_identities(std::span<const MethodRecord> rows) {
    std::map<MethodIdentity, bool> labels;
    for (const auto& r : rows) {
        labels[r.identity] = labels[r.identity] || r.faulty;
    }
    return {labels.begin(), labels.end()};
}

} // namespace idp
