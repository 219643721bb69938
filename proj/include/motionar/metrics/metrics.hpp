#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motionar/forecast/record.hpp"
#include "motionar/pose/sequence.hpp"

namespace motionar::metrics {

using pose::Frames;

enum class Metric { kMpje, kMea };

/// How MEA averages over angle triples.
enum class MeaNorm {
  kTriple,     // (1/(N L)) sum ||dz_l||, Euclidean norm per triple (default)
  kFlattened,  // (1/(N 3L)) sum |dz_c| over individual components
};

[[nodiscard]] std::string_view to_string(Metric m) noexcept;
[[nodiscard]] Metric metric_from_string(std::string_view name);

/// Mean per-joint Euclidean error (cm). Inputs are N x 3K, one joint triple per
/// column group.
[[nodiscard]] double mpje(const Eigen::Ref<const Frames>& pred, const Eigen::Ref<const Frames>& truth);

/// Mean Euler-angle error (rad). Inputs are N x 3L Euler triples. Each angle
/// difference is wrapped into (-pi, pi] before taking norms, which is the same
/// as unwrapping the prediction against the ground truth.
[[nodiscard]] double mea(const Eigen::Ref<const Frames>& pred, const Eigen::Ref<const Frames>& truth,
                         MeaNorm norm = MeaNorm::kTriple);

/// Per-step error of one forecast: element h is the metric restricted to step h.
[[nodiscard]] std::vector<double> per_step_errors(const Eigen::Ref<const Frames>& pred,
                                                  const Eigen::Ref<const Frames>& truth, Metric metric,
                                                  MeaNorm norm = MeaNorm::kTriple);

/// Average over individuals of each individual's average anchor error:
/// (1/I) sum_i (1/T_i) sum_t e_{i,t}. Anchors weigh equally within an individual.
[[nodiscard]] double aggregate_objective(const std::vector<std::vector<double>>& per_individual);

/// Per-horizon error curve, e_h for h = 1..N, with the number of anchors behind each value.
struct ErrorCurve {
  Metric metric = Metric::kMpje;
  std::string source;
  double fps = 25.0;
  std::vector<double> values;
  std::vector<std::size_t> counts;

  [[nodiscard]] std::size_t horizon() const noexcept { return values.size(); }

  /// Adds one anchor's per-step errors (may be shorter than the curve).
  void add(std::span<const double> step_errors);
  /// Count-weighted merge of another curve with the same metric.
  void merge(const ErrorCurve& other);

  /// header `horizon_ms,metric,value,count`, one row per horizon with a count.
  void write_csv(std::ostream& out) const;
};

/// Per-step errors of one forecast against the matching ground-truth rows of
/// a sequence stored as `representation`. MPJE needs positions and MEA needs
/// exp-map angles, which are converted to Euler triples on both sides.
[[nodiscard]] std::vector<double> forecast_step_errors(const Eigen::Ref<const Frames>& pred,
                                                       const Eigen::Ref<const Frames>& truth,
                                                       pose::Representation representation, Metric metric,
                                                       MeaNorm norm = MeaNorm::kTriple);

/// Averages per-horizon errors of `records` against the ground truth.
/// For MEA on exp-map data both sides are converted to Euler triples first.
/// Throws InvalidInput when a record reaches outside the sequence.
[[nodiscard]] ErrorCurve error_curve(std::span<const forecast::ForecastRecord> records, const pose::PoseSequence& truth,
                                     Metric metric, MeaNorm norm = MeaNorm::kTriple);

/// Shortest round-trip decimal with '.' separator regardless of locale.
[[nodiscard]] std::string format_double(double value);

}  // namespace motionar::metrics
