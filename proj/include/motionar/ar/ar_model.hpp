#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

namespace motionar::ar {

inline constexpr double kDefaultRidge = 1e-8;

/// Autoregressive model in predictor form: y_t = coefficients . (y_{t-1}, ..., y_{t-P}) + e_t.
struct ArModel {
  Eigen::VectorXd coefficients;     // alpha_1 .. alpha_P
  double innovation_variance = 0.0;  // sigma^2 of e_t

  [[nodiscard]] int order() const noexcept { return static_cast<int>(coefficients.size()); }

  /// {"order":P,"coefficients":[...],"innovation_variance":s2}
  [[nodiscard]] nlohmann::json to_json() const;
  [[nodiscard]] static ArModel from_json(const nlohmann::json& doc);
  void save(const std::filesystem::path& path) const;
  [[nodiscard]] static ArModel load(const std::filesystem::path& path);
};

/// Non-owning view of a scalar series with AR regressor construction.
/// The regressor at (0-based) index t is (y[t-1], ..., y[t-P]), defined for t >= P.
class LaggedSeries {
 public:
  LaggedSeries() = default;
  explicit LaggedSeries(std::span<const double> values) : values_(values) {}

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t t) const { return values_[t]; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] LaggedSeries tail_from(std::size_t start) const { return LaggedSeries(values_.subspan(start)); }

  /// Number of targets with a full regressor at order P.
  [[nodiscard]] std::size_t usable(int order) const noexcept {
    const auto p = static_cast<std::size_t>(order);
    return values_.size() > p ? values_.size() - p : 0;
  }

  [[nodiscard]] Eigen::VectorXd regressor(std::size_t t, int order) const;

 private:
  std::span<const double> values_;
};

/// Closed-form exponentially weighted least squares:
///   alpha = (sum_j g^(n-1-j) phi_j phi_j^T + ridge I)^-1 sum_j g^(n-1-j) phi_j y_j
/// over the n usable targets, oldest first. innovation_variance is the weighted
/// mean squared one-step residual. Segments are treated as one stream for the
/// weights, without regressors crossing segment boundaries.
///
/// Throws RankDeficiency when ridge == 0 and the information matrix is singular.
[[nodiscard]] ArModel fit_ar_batch(std::span<const LaggedSeries> segments, int order, double forgetting = 1.0,
                                   double ridge = kDefaultRidge);
[[nodiscard]] ArModel fit_ar_batch(const LaggedSeries& series, int order, double forgetting = 1.0,
                                   double ridge = kDefaultRidge);

/// Multi-step forecast. `history` is chronological (oldest first) and must hold
/// at least P values; predictions are fed back as regressors. Unstable models
/// are allowed and their forecasts may grow without bound.
[[nodiscard]] Eigen::VectorXd ar_predict(const Eigen::Ref<const Eigen::VectorXd>& coefficients,
                                         std::span<const double> history, int horizon);
[[nodiscard]] inline Eigen::VectorXd ar_predict(const ArModel& model, std::span<const double> history,
                                                int horizon) {
  return ar_predict(model.coefficients, history, horizon);
}

struct BicSelection {
  int order = 0;
  /// Set when some order fits the series exactly (zero residual variance);
  /// `order` is then the smallest such order.
  bool deterministic = false;
  std::vector<double> scores;  // n ln(sigma^2_P) + P ln(n), one per P = 0..max_order
};

/// BIC order selection over P = 0..max_order. Every order is scored on the
/// same n targets (those with max_order lags available); ties go to the
/// smaller order.
[[nodiscard]] BicSelection bic_order_select(std::span<const LaggedSeries> segments, int max_order,
                                            double forgetting = 1.0, double ridge = kDefaultRidge);
[[nodiscard]] BicSelection bic_order_select(const LaggedSeries& series, int max_order, double forgetting = 1.0,
                                            double ridge = kDefaultRidge);

/// Removes 2*pi jumps so consecutive samples differ by at most pi.
[[nodiscard]] std::vector<double> unwrap_angles(std::span<const double> angles);

}  // namespace motionar::ar
