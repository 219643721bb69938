#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "motionar/forecast/predictor.hpp"

namespace motionar::forecast {

/// JSON-lines forecasts, one object per anchor:
///   {"t":int, "N":int, "D":int, "pred":[[f64 x D] x N]}
/// Anchors must be strictly increasing. Blank lines are ignored.
/// Throws ParseError (with line number) on malformed JSON and SchemaError on
/// shape, finiteness or ordering problems, or when `expected_dims` disagrees.
[[nodiscard]] std::vector<ForecastRecord> parse_external_predictions(std::istream& in,
                                                                     std::optional<Eigen::Index> expected_dims = {});
[[nodiscard]] std::vector<ForecastRecord> load_external_predictions(const std::filesystem::path& path,
                                                                    std::optional<Eigen::Index> expected_dims = {});

/// Writes records in the format read by parse_external_predictions.
void write_external_predictions(std::ostream& out, std::span<const ForecastRecord> records);

/// Replays precomputed forecasts (e.g. a neural network's) keyed by anchor.
class ExternalPredictor final : public Predictor {
 public:
  explicit ExternalPredictor(std::vector<ForecastRecord> records, std::string name = "external");

  [[nodiscard]] std::string name() const override { return name_; }
  void observe(const Eigen::Ref<const Frames>& window, std::size_t anchor) override;
  /// Throws InvalidInput when no record exists for the anchor or it is too short.
  [[nodiscard]] Frames predict(int horizon) override;

 private:
  std::map<std::size_t, Frames> by_anchor_;
  std::string name_;
  std::size_t anchor_ = 0;
};

}  // namespace motionar::forecast
