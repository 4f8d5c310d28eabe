#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idp/discretization.hpp"
#include "idp/items.hpp"
#include "idp/metrics.hpp"

namespace idp {

/// Which code version a row's metrics were computed on.
enum class Snapshot : std::uint8_t { Current, Faulty };

std::string_view snapshot_name(Snapshot snapshot);

/// One row of the metrics dataset. Faulty rows carry metrics computed at the
/// faulty state; a method fixed several times appears once per fix until it
/// is consolidated.
struct MethodRecord {
    MethodIdentity identity;
    RawMetrics metrics;
    CategoryFlags categories;
    bool faulty = false;
    Snapshot snapshot = Snapshot::Current;

    bool operator==(const MethodRecord&) const = default;
};

using Dataset = std::vector<MethodRecord>;

// ---- metrics CSV ----------------------------------------------------------

std::vector<std::string> csv_columns();

/// Writes the header and one row per record. `comment`, when non-empty, is
/// emitted first as a single `# ...` line.
void write_csv(std::ostream& out, std::span<const MethodRecord> records, std::string_view comment = {});
void write_csv(const std::filesystem::path& path, std::span<const MethodRecord> records,
               std::string_view comment = {});

/// Reads a metrics CSV. Columns may appear in any order; every documented
/// column is required. Throws SchemaError naming the offending column or row.
Dataset read_csv(std::istream& in, std::string_view source_name = "<stream>");
Dataset read_csv(const std::filesystem::path& path);

/// Label file: identity columns plus `faulty`. Returns identities labeled faulty.
std::vector<MethodIdentity> read_label_file(const std::filesystem::path& path);

// ---- itemized instances ---------------------------------------------------

/// A method after discretization: its item vector plus what evaluation needs.
struct Instance {
    MethodIdentity identity;
    ItemVector items;
    bool faulty = false;
    Snapshot snapshot = Snapshot::Current;
    std::int64_t sloc = 0;

    bool operator==(const Instance&) const = default;
};

Instance make_instance(const MethodRecord& record, const DiscretizationModel& model);

/// Merges faulty instances sharing an identity into one by majority vote per
/// attribute. Binary ties resolve to true, tertile ties to the higher class,
/// and SLOC to the upper median. Output is sorted by identity.
std::vector<Instance> consolidate_faulty(std::span<const Instance> faulty);

struct UnifyResult {
    std::vector<Instance> instances;    // sorted by identity, each identity once
    std::vector<std::string> warnings;  // faulty identities absent from `all`
};

/// Replaces methods of `all` that also occur in `faulty` with their faulty
/// counterparts. Faulty methods missing from `all` (deleted since) are kept.
UnifyResult unify(std::span<const Instance> all, std::span<const Instance> faulty);

/// Rows that describe the unified population: every faulty row plus the
/// current-state rows of identities that were never faulty. Discretization
/// is fitted on these.
std::vector<MethodRecord> unified_rows(std::span<const MethodRecord> rows);

struct PreparedInstances {
    std::vector<Instance> instances;
    std::vector<std::string> warnings;
};

/// Itemizes rows with `model`, consolidates faulty duplicates and unifies
/// them with the current-state rows.
PreparedInstances prepare_instances(std::span<const MethodRecord> rows, const DiscretizationModel& model);

/// Distinct identities and their faulty flag (faulty if any row is faulty),
/// sorted by identity.
std::vector<std::pair<MethodIdentity, bool>> labeled_identities(std::span<const MethodRecord> rows);

} // namespace idp
