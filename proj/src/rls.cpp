#include "motionar/ar/rls.hpp"

#include <cmath>

#include "motionar/error.hpp"

namespace motionar::ar {

RlsState RlsState::init(int order, double forgetting, double init_scale) {
  if (order < 1) throw InvalidInput("rls_init: order must be >= 1");
  if (!(forgetting > 0.0 && forgetting <= 1.0)) throw InvalidInput("rls_init: forgetting must lie in (0, 1]");
  if (!(init_scale > 0.0) || !std::isfinite(init_scale)) throw InvalidInput("rls_init: init_scale must be > 0");
  RlsState s;
  s.coefficients_ = Eigen::VectorXd::Zero(order);
  s.inverse_information_ = init_scale * Eigen::MatrixXd::Identity(order, order);
  s.forgetting_ = forgetting;
  s.init_scale_ = init_scale;
  s.gain_ = Eigen::VectorXd::Zero(order);
  return s;
}

void RlsState::update(const Eigen::Ref<const Eigen::VectorXd>& phi, double y) {
  if (phi.size() != coefficients_.size()) {
    throw InvalidInput("rls_update: regressor has " + std::to_string(phi.size()) + " entries, order is " +
                       std::to_string(coefficients_.size()));
  }
  if (!phi.allFinite() || !std::isfinite(y)) throw InvalidInput("rls_update: non-finite regressor or target");

  const double innovation = y - coefficients_.dot(phi);
  gain_.noalias() = inverse_information_ * phi;  // X_{t-1} phi
  const double denom = phi.dot(gain_) + forgetting_;
  if (!std::isfinite(denom) || !(denom > 0.0)) {
    throw NumericalError("rls_update: degenerate denominator phi^T X phi + gamma = " + std::to_string(denom));
  }
  // X phi phi^T X == (X phi)(X phi)^T because X is symmetric.
  inverse_information_.noalias() -= (gain_ * gain_.transpose()) / denom;
  inverse_information_ /= forgetting_;
  inverse_information_ = 0.5 * (inverse_information_ + inverse_information_.transpose()).eval();

  coefficients_.noalias() += inverse_information_ * phi * innovation;
  if (!coefficients_.allFinite() || !inverse_information_.allFinite()) {
    throw NumericalError("rls_update: state became non-finite");
  }
  weighted_sq_error_ = forgetting_ * weighted_sq_error_ + innovation * innovation;
  weight_sum_ = forgetting_ * weight_sum_ + 1.0;
  ++samples_;
}

double RlsState::predict(const Eigen::Ref<const Eigen::VectorXd>& phi) const {
  if (phi.size() != coefficients_.size()) throw InvalidInput("rls predict: regressor size mismatch");
  return coefficients_.dot(phi);
}

Eigen::VectorXd RlsState::forecast(std::span<const double> history, int horizon) const {
  return ar_predict(coefficients_, history, horizon);
}

double RlsState::implied_ridge() const noexcept {
  return std::pow(forgetting_, static_cast<double>(samples_)) / init_scale_;
}

ArModel RlsState::as_model() const {
  return {coefficients_, weight_sum_ > 0.0 ? weighted_sq_error_ / weight_sum_ : 0.0};
}

}  // namespace motionar::ar
