#pragma once

#include <cstdint>
#include <span>

#include <Eigen/Core>

#include "motionar/ar/ar_model.hpp"

namespace motionar::ar {

inline constexpr double kDefaultForgetting = 0.99;
inline constexpr double kDefaultInitScale = 1e4;

/// Exponentially weighted recursive least squares for one AR(P) series.
///
/// X is the inverse of the weighted information matrix, updated with the
/// matrix inversion lemma. After t updates the coefficients equal the batch
/// solution with ridge forgetting^t / init_scale.
///
/// A state is a plain value; one writer at a time.
class RlsState {
 public:
  /// alpha = 0, X = init_scale * I, t = 0.
  [[nodiscard]] static RlsState init(int order, double forgetting = kDefaultForgetting,
                                     double init_scale = kDefaultInitScale);

  /// One step with regressor phi = (y_{t-1}, ..., y_{t-P}) and target y:
  ///   X_t     = (X_{t-1} - X_{t-1} phi phi^T X_{t-1} / (phi^T X_{t-1} phi + g)) / g
  ///   alpha_t = alpha_{t-1} + X_t phi (y - phi^T alpha_{t-1})
  /// Throws NumericalError when the denominator is not a positive finite number.
  void update(const Eigen::Ref<const Eigen::VectorXd>& phi, double y);

  /// One-step prediction alpha^T phi.
  [[nodiscard]] double predict(const Eigen::Ref<const Eigen::VectorXd>& phi) const;
  /// Multi-step forecast from a chronological history (see ar_predict).
  [[nodiscard]] Eigen::VectorXd forecast(std::span<const double> history, int horizon) const;

  [[nodiscard]] int order() const noexcept { return static_cast<int>(coefficients_.size()); }
  [[nodiscard]] const Eigen::VectorXd& coefficients() const noexcept { return coefficients_; }
  [[nodiscard]] const Eigen::MatrixXd& inverse_information() const noexcept { return inverse_information_; }
  [[nodiscard]] double forgetting() const noexcept { return forgetting_; }
  [[nodiscard]] double init_scale() const noexcept { return init_scale_; }
  [[nodiscard]] std::uint64_t sample_count() const noexcept { return samples_; }
  /// Ridge of the equivalent batch problem: forgetting^t / init_scale.
  [[nodiscard]] double implied_ridge() const noexcept;

  /// Coefficients plus the weighted mean squared a-priori error.
  [[nodiscard]] ArModel as_model() const;

 private:
  RlsState() = default;

  Eigen::VectorXd coefficients_;
  Eigen::MatrixXd inverse_information_;
  double forgetting_ = kDefaultForgetting;
  double init_scale_ = kDefaultInitScale;
  std::uint64_t samples_ = 0;
  double weighted_sq_error_ = 0.0;
  double weight_sum_ = 0.0;
  Eigen::VectorXd gain_;  // scratch, avoids a reallocation per update
};

}  // namespace motionar::ar
