#pragma once

#include <optional>
#include <vector>

#include "motionar/ar/rls.hpp"
#include "motionar/forecast/predictor.hpp"

namespace motionar::forecast {

struct CorrectorOptions {
  int order = 1;
  double forgetting = ar::kDefaultForgetting;
  double init_scale = ar::kDefaultInitScale;
  /// RLS updates required before any correction is applied. 0 corrects as
  /// soon as a residual history exists.
  int warmup = 0;
};

/// The base forecast is kept verbatim next to the correction so it can be
/// recovered exactly.
struct CorrectedForecast {
  Frames base;
  Frames correction;
  Frames corrected;
};

/// Online AR correction of a base predictor's residuals, one RLS estimator
/// per dimension.
///
/// At each anchor t the residual of the base's previous one-step forecast,
/// r_t = x_{t-1} - base_{t-1}[0], trains the per-dimension AR model on
/// (phi = (r_{t-1}, ..., r_{t-P}), y = r_t). The correction at horizon h is
/// the AR extrapolation of the residual history (alpha^h r_t for order 1).
/// Only one-step residuals are training targets.
///
/// Memory is O(D P^2) and does not grow with the stream. Single writer.
class ResidualCorrector {
 public:
  ResidualCorrector(Eigen::Index dims, CorrectorOptions options = {});

  /// `observed` is the newest observed frame (index anchor - 1) and
  /// `base_prediction` the base forecast issued at `anchor`. If the previous
  /// call was not at anchor - 1 the residual chain restarts (no update).
  /// Until a residual history exists, or fewer than `warmup` updates have
  /// been made, the correction is zero.
  [[nodiscard]] CorrectedForecast correct(std::size_t anchor, const Eigen::Ref<const Eigen::RowVectorXd>& observed,
                                          const Eigen::Ref<const Frames>& base_prediction);

  void reset();

  [[nodiscard]] Eigen::Index dims() const noexcept { return dims_; }
  [[nodiscard]] const CorrectorOptions& options() const noexcept { return options_; }
  [[nodiscard]] const ar::RlsState& state(Eigen::Index d) const { return states_.at(static_cast<std::size_t>(d)); }
  /// Newest residual r_t, if any.
  [[nodiscard]] std::optional<Eigen::RowVectorXd> last_residual() const;
  /// Number of AR coefficients (D P).
  [[nodiscard]] std::size_t parameter_count() const noexcept;
  /// Floats held by the estimator state: coefficients, inverse information
  /// matrices and residual lags.
  [[nodiscard]] std::size_t state_size() const noexcept;

 private:
  Eigen::Index dims_;
  CorrectorOptions options_;
  std::vector<ar::RlsState> states_;
  Eigen::MatrixXd residuals_;  // (P + 1) x D ring, newest at row head_
  int filled_ = 0;
  int head_ = -1;
  std::optional<std::size_t> previous_anchor_;
  Eigen::RowVectorXd previous_one_step_;
};

}  // namespace motionar::forecast
