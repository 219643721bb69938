#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "motionar/pose/sequence.hpp"
#include "motionar/pose/skeleton.hpp"

namespace motionar::bench {

/// Pose CSV: a header of D column labels, then one row of D numbers per frame.
/// The sidecar sits next to it with the extension replaced by ".json":
///   {"representation":"positions_cm"|"expmap", "fps":25, "dims":D,
///    "subject_id":"S5", "action":"walking",
///    "euler_order":"ZXY",            optional
///    "normalize":true,               optional, positions only
///    "skeleton":"skeleton.json"}     required by normalize, relative to the sidecar
[[nodiscard]] std::filesystem::path sidecar_path(const std::filesystem::path& csv);

/// Reads and validates a sequence. ConfigError when the sidecar is missing
/// (naming the expected path), SchemaError when the header disagrees with the
/// sidecar, ParseError with the data row and line number on a short/long row
/// or a non-finite or unparsable value.
[[nodiscard]] pose::PoseSequence ingest(const std::filesystem::path& csv);

/// Writes CSV and sidecar with round-trip precision. Labels default to d0, d1, ...
void write_sequence(const std::filesystem::path& csv, const pose::PoseSequence& seq);

struct NamedSequence {
  std::string name;  // file stem
  std::filesystem::path path;
  pose::PoseSequence sequence;
};

/// Every *.csv under the given paths (directories are scanned, not
/// recursively), sorted by name.
[[nodiscard]] std::vector<NamedSequence> load_dataset(const std::vector<std::filesystem::path>& paths);

/// Sequences whose subject id is listed, in input order.
[[nodiscard]] std::vector<NamedSequence> select_subjects(const std::vector<NamedSequence>& all,
                                                         const std::vector<std::string>& ids);

}  // namespace motionar::bench
