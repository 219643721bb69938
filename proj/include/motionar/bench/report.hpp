#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "motionar/bench/config.hpp"
#include "motionar/bench/protocol.hpp"

namespace motionar::bench {

inline constexpr int kReportFormat = 1;
/// Field holding the wall-clock time; the only field allowed to differ
/// between identical runs.
inline constexpr const char* kTimestampField = "generated_at";

/// ISO 8601 UTC, seconds resolution.
[[nodiscard]] std::string utc_timestamp();

/// report.json content: config echo, models with parameter counts, one entry
/// per curve (values, counts, horizon_ms, csv file name), sequence
/// accounting, per-subject totals and the aggregate objective per source.
[[nodiscard]] nlohmann::json build_report(const ProtocolConfig& config, const ProtocolResult& result,
                                          const std::string& timestamp);

/// CSV file name used for a curve: curves_<source>_<metric>.csv with
/// characters outside [A-Za-z0-9_.-] replaced by '_'.
[[nodiscard]] std::string curve_file_name(const metrics::ErrorCurve& curve);

[[nodiscard]] std::vector<metrics::ErrorCurve> curves_from_report(const nlohmann::json& report);

/// Writes report.json and one CSV per curve into `dir`.
void write_report(const std::filesystem::path& dir, const nlohmann::json& report);

[[nodiscard]] nlohmann::json load_report(const std::filesystem::path& path);

/// The report serialized without the timestamp; equal fingerprints mean
/// byte-identical reports apart from that field.
[[nodiscard]] std::string report_fingerprint(nlohmann::json report);

/// Combines runs: curves with the same source and metric are merged count
/// weighted, subject totals are added and objectives recomputed. Runs keep
/// their configs under "runs". Throws SchemaError on mismatched fps or
/// horizons for a shared curve.
[[nodiscard]] nlohmann::json merge_reports(const std::vector<nlohmann::json>& reports, const std::string& timestamp);

}  // namespace motionar::bench
