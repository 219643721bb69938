#pragma once

#include <span>
#include <vector>

#include "motionar/forecast/predictor.hpp"

namespace motionar::forecast {

struct RidgeOptions {
  double lambda = 1.0;
  /// z-score inputs per pose dimension with training statistics.
  bool standardize = true;
  /// Unpenalized intercept (the training target mean after centering).
  /// With both flags off the fit is the plain objective
  /// sum ||target - W vec(input)||^2 + lambda ||W||_F^2.
  bool intercept = true;
};

struct TrainingPair {
  Frames input;   // M x D
  Frames target;  // N x D
};

/// Linear multi-output map from a flattened M x D window to an N x D forecast.
struct RidgeMap {
  int observe_frames = 0;
  int predict_frames = 0;
  int dims = 0;
  Eigen::MatrixXd weights;    // (M D) x (N D), applied as z^T W
  Eigen::RowVectorXd offset;  // N D, added after the product
  Eigen::RowVectorXd input_mean;   // D
  Eigen::RowVectorXd input_scale;  // D

  [[nodiscard]] std::size_t parameter_count() const noexcept {
    return static_cast<std::size_t>(weights.size() + offset.size());
  }
};

/// Windows [t - M, t) with targets [t, t + N) for t = M, M + stride, ...
[[nodiscard]] std::vector<TrainingPair> make_training_pairs(const Frames& frames, int observe, int predict,
                                                            int stride = 1);

/// Throws InvalidInput on empty data or shape mismatch, RankDeficiency when
/// lambda == 0 and the design is rank deficient.
[[nodiscard]] RidgeMap ridge_regression_fit(std::span<const TrainingPair> pairs, const RidgeOptions& options = {});
[[nodiscard]] Frames ridge_regression_predict(const RidgeMap& map, const Eigen::Ref<const Frames>& window);

class RidgePredictor final : public Predictor {
 public:
  explicit RidgePredictor(RidgeMap map) : map_(std::move(map)) {}
  [[nodiscard]] std::string name() const override { return "ridge"; }
  void observe(const Eigen::Ref<const Frames>& window, std::size_t anchor) override;
  /// Throws InvalidInput when the horizon exceeds the fitted one.
  [[nodiscard]] Frames predict(int horizon) override;
  [[nodiscard]] std::size_t parameter_count() const override { return map_.parameter_count(); }

 private:
  RidgeMap map_;
  Frames window_;
};

}  // namespace motionar::forecast
