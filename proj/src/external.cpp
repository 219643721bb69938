#include "motionar/forecast/external.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"
#include "motionar/error.hpp"

namespace motionar::forecast {
namespace {

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

ForecastRecord parse_record(const nlohmann::json& doc, std::size_t line, std::optional<Eigen::Index> expected_dims) {
  if (!doc.is_object()) throw SchemaError(at_line(line) + "expected a JSON object");
  for (const char* key : {"t", "N", "D", "pred"}) {
    if (!doc.contains(key)) throw SchemaError(at_line(line) + "missing field \"" + key + "\"");
  }
  if (!doc["t"].is_number_integer() || !doc["N"].is_number_integer() || !doc["D"].is_number_integer()) {
    throw SchemaError(at_line(line) + "\"t\", \"N\" and \"D\" must be integers");
  }
  const auto t = doc["t"].get<long long>();
  const auto n = doc["N"].get<long long>();
  const auto d = doc["D"].get<long long>();
  if (t < 0 || n < 1 || d < 1) throw SchemaError(at_line(line) + "need t >= 0, N >= 1, D >= 1");
  if (expected_dims && d != *expected_dims) {
    throw SchemaError(at_line(line) + "expected D = " + std::to_string(*expected_dims) + ", record declares D = " +
                      std::to_string(d));
  }
  const auto& pred = doc["pred"];
  if (!pred.is_array() || static_cast<long long>(pred.size()) != n) {
    throw SchemaError(at_line(line) + "expected " + std::to_string(n) + "x" + std::to_string(d) + " prediction, got " +
                      std::to_string(pred.is_array() ? pred.size() : 0) + " rows");
  }
  ForecastRecord rec;
  rec.anchor = static_cast<std::size_t>(t);
  rec.source = "base";
  rec.prediction.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (long long h = 0; h < n; ++h) {
    const auto& row = pred[static_cast<std::size_t>(h)];
    if (!row.is_array() || static_cast<long long>(row.size()) != d) {
      throw SchemaError(at_line(line) + "expected " + std::to_string(n) + "x" + std::to_string(d) + " prediction, row " +
                        std::to_string(h) + " has " + std::to_string(row.is_array() ? row.size() : 0) + " columns");
    }
    for (long long c = 0; c < d; ++c) {
      const auto& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw SchemaError(at_line(line) + "non-numeric prediction entry");
      const double x = v.get<double>();
      if (!std::isfinite(x)) throw SchemaError(at_line(line) + "non-finite prediction entry");
      rec.prediction(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(c)) = x;
    }
  }
  return rec;
}

}  // namespace

std::vector<ForecastRecord> parse_external_predictions(std::istream& in, std::optional<Eigen::Index> expected_dims) {
  std::vector<ForecastRecord> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line);
    }
    ForecastRecord rec = parse_record(doc, line, expected_dims);
    if (!out.empty()) {
      if (rec.anchor <= out.back().anchor) {
        throw SchemaError(at_line(line) + "anchor " + std::to_string(rec.anchor) + " does not follow anchor " +
                          std::to_string(out.back().anchor));
      }
      if (rec.dims() != out.back().dims()) {
        throw SchemaError(at_line(line) + "expected D = " + std::to_string(out.back().dims()) + ", got D = " +
                          std::to_string(rec.dims()));
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ForecastRecord> load_external_predictions(const std::filesystem::path& path,
                                                      std::optional<Eigen::Index> expected_dims) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open predictions file " + path.string());
  return parse_external_predictions(in, expected_dims);
}

void write_external_predictions(std::ostream& out, std::span<const ForecastRecord> records) {
  for (const auto& r : records) {
    nlohmann::json pred = nlohmann::json::array();
    for (Eigen::Index h = 0; h < r.horizon(); ++h) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < r.dims(); ++c) row.push_back(r.prediction(h, c));
      pred.push_back(std::move(row));
    }
    const nlohmann::json doc{{"t", r.anchor}, {"N", r.horizon()}, {"D", r.dims()}, {"pred", std::move(pred)}};
    out << doc.dump() << '\n';
  }
}

ExternalPredictor::ExternalPredictor(std::vector<ForecastRecord> records, std::string name) : name_(std::move(name)) {
  for (auto& r : records) by_anchor_.emplace(r.anchor, std::move(r.prediction));
}

void ExternalPredictor::observe(const Eigen::Ref<const Frames>& /*window*/, std::size_t anchor) { anchor_ = anchor; }

Frames ExternalPredictor::predict(int horizon) {
  const auto it = by_anchor_.find(anchor_);
  if (it == by_anchor_.end()) {
    throw InvalidInput("external predictions have no record for anchor " + std::to_string(anchor_));
  }
  if (horizon < 0 || it->second.rows() < horizon) {
    throw InvalidInput("external record at anchor " + std::to_string(anchor_) + " has horizon " +
                       std::to_string(it->second.rows()) + ", " + std::to_string(horizon) + " requested");
  }
  return it->second.topRows(horizon);
}

}  // namespace motionar::forecast
