#include "motionar/bench/report.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>

#include "motionar/error.hpp"

namespace motionar::bench {
namespace {

nlohmann::json curve_to_json(const metrics::ErrorCurve& c) {
  std::vector<double> horizon_ms;
  for (std::size_t h = 0; h < c.values.size(); ++h) horizon_ms.push_back(static_cast<double>(h + 1) * 1000.0 / c.fps);
  return {{"source", c.source},       {"metric", std::string(metrics::to_string(c.metric))},
          {"fps", c.fps},             {"horizon_ms", horizon_ms},
          {"values", c.values},       {"counts", c.counts},
          {"csv", curve_file_name(c)}};
}

nlohmann::json objectives(const nlohmann::json& subjects) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [source, per_subject] : subjects.items()) {
    std::vector<std::vector<double>> means;
    for (const auto& [_, totals] : per_subject.items()) {
      const auto count = totals.at("count").get<std::size_t>();
      if (count > 0) means.push_back({totals.at("sum").get<double>() / static_cast<double>(count)});
    }
    if (!means.empty()) out[source] = metrics::aggregate_objective(means);
  }
  return out;
}

}  // namespace

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string curve_file_name(const metrics::ErrorCurve& curve) {
  std::string name = "curves_" + curve.source + "_" + std::string(metrics::to_string(curve.metric)) + ".csv";
  for (char& c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                    c == '-' || c == '.';
    if (!ok) c = '_';
  }
  return name;
}

nlohmann::json build_report(const ProtocolConfig& config, const ProtocolResult& result, const std::string& timestamp) {
  nlohmann::json models = nlohmann::json::array();
  models.push_back({{"name", result.base_name.empty() ? "none" : result.base_name},
                    {"role", "base"},
                    {"parameters", result.base_parameters}});
  if (config.correct) {
    models.push_back({{"name", "recursive-ar"},
                      {"role", "corrector"},
                      {"parameters", result.corrector_parameters},
                      {"state_floats", result.corrector_state}});
  }

  nlohmann::json curves = nlohmann::json::array();
  for (const auto& c : result.curves) curves.push_back(curve_to_json(c));

  nlohmann::json evaluated = nlohmann::json::array();
  for (const auto& s : result.sequences) {
    evaluated.push_back({{"name", s.name},
                         {"subject", s.subject},
                         {"frames", s.frames},
                         {"anchors", s.anchors},
                         {"future_reads", s.future_reads}});
  }
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& s : result.skipped) skipped.push_back({{"name", s.name}, {"frames", s.frames}, {"reason", s.reason}});

  nlohmann::json subjects = nlohmann::json::object();
  for (const auto& [source, per_subject] : result.subjects) {
    for (const auto& [subject, totals] : per_subject) {
      subjects[source][subject] = {{"sum", totals.sum}, {"count", totals.count}};
    }
  }

  nlohmann::json report{{"format", kReportFormat},
                        {kTimestampField, timestamp},
                        {"runs", nlohmann::json::array({{{"config", config.to_json()}, {"models", std::move(models)}}})},
                        {"curves", std::move(curves)},
                        {"sequences", {{"evaluated", std::move(evaluated)}, {"skipped", std::move(skipped)}}},
                        {"subjects", subjects}};
  report["objective"] = objectives(subjects);
  return report;
}

std::vector<metrics::ErrorCurve> curves_from_report(const nlohmann::json& report) {
  std::vector<metrics::ErrorCurve> out;
  try {
    for (const auto& c : report.at("curves")) {
      metrics::ErrorCurve curve;
      curve.source = c.at("source").get<std::string>();
      curve.metric = metrics::metric_from_string(c.at("metric").get<std::string>());
      curve.fps = c.at("fps").get<double>();
      curve.values = c.at("values").get<std::vector<double>>();
      curve.counts = c.at("counts").get<std::vector<std::size_t>>();
      if (curve.values.size() != curve.counts.size()) throw SchemaError("curve values and counts differ in length");
      out.push_back(std::move(curve));
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("report: ") + e.what());
  }
  return out;
}

void write_report(const std::filesystem::path& dir, const nlohmann::json& report) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "report.json");
    if (!out) throw ConfigError("cannot write " + (dir / "report.json").string());
    out << report.dump(2) << '\n';
  }
  for (const auto& c : curves_from_report(report)) {
    std::ofstream out(dir / curve_file_name(c));
    if (!out) throw ConfigError("cannot write " + (dir / curve_file_name(c)).string());
    c.write_csv(out);
  }
}

nlohmann::json load_report(const std::filesystem::path& path) {
  const auto file = std::filesystem::is_directory(path) ? path / "report.json" : path;
  std::ifstream in(file);
  if (!in) throw ConfigError("report not found: " + file.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(file.string() + ": " + e.what());
  }
}

std::string report_fingerprint(nlohmann::json report) {
  report.erase(kTimestampField);
  return report.dump();
}

nlohmann::json merge_reports(const std::vector<nlohmann::json>& reports, const std::string& timestamp) {
  if (reports.empty()) throw InvalidInput("merge_reports: no reports");
  nlohmann::json runs = nlohmann::json::array();
  std::vector<metrics::ErrorCurve> curves;
  nlohmann::json evaluated = nlohmann::json::array();
  nlohmann::json skipped = nlohmann::json::array();
  nlohmann::json subjects = nlohmann::json::object();
  try {
    for (const auto& r : reports) {
      if (r.at("format").get<int>() != kReportFormat) throw SchemaError("report: unsupported format");
      for (const auto& run : r.at("runs")) runs.push_back(run);
      for (auto& c : curves_from_report(r)) {
        auto it = std::find_if(curves.begin(), curves.end(),
                               [&](const auto& e) { return e.source == c.source && e.metric == c.metric; });
        if (it == curves.end()) {
          curves.push_back(std::move(c));
          continue;
        }
        if (it->fps != c.fps || it->values.size() != c.values.size()) {
          throw SchemaError("report: curve " + c.source + " differs in fps or horizon between runs");
        }
        it->merge(c);
      }
      for (const auto& s : r.at("sequences").at("evaluated")) evaluated.push_back(s);
      for (const auto& s : r.at("sequences").at("skipped")) skipped.push_back(s);
      for (const auto& [source, per_subject] : r.at("subjects").items()) {
        for (const auto& [subject, totals] : per_subject.items()) {
          auto& dst = subjects[source][subject];
          if (dst.is_null()) dst = {{"sum", 0.0}, {"count", 0}};
          dst["sum"] = dst["sum"].get<double>() + totals.at("sum").get<double>();
          dst["count"] = dst["count"].get<std::size_t>() + totals.at("count").get<std::size_t>();
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("report: ") + e.what());
  }
  nlohmann::json curve_docs = nlohmann::json::array();
  for (const auto& c : curves) curve_docs.push_back(curve_to_json(c));
  nlohmann::json report{{"format", kReportFormat},
                        {kTimestampField, timestamp},
                        {"runs", std::move(runs)},
                        {"curves", std::move(curve_docs)},
                        {"sequences", {{"evaluated", std::move(evaluated)}, {"skipped", std::move(skipped)}}},
                        {"subjects", subjects}};
  report["objective"] = objectives(subjects);
  return report;
}

}  // namespace motionar::bench
