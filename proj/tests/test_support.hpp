#pragma once

// Test-only generators and oracles. Nothing here calls into the library's
// estimators, so the checks stay independent of the code under test.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "motionar/pose/rotation.hpp"

namespace test_support {

inline motionar::pose::Quaternion random_unit_quaternion(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector4d v(n(rng), n(rng), n(rng), n(rng));
  v.normalize();
  return {v[0], v[1], v[2], v[3]};
}

/// y_t = sum_k a_k y_{t-k} + sigma e_t from a zero initial state, after `burn_in` discarded samples.
inline std::vector<double> simulate_ar(const std::vector<double>& a, double sigma, std::size_t length,
                                       std::uint64_t seed, std::size_t burn_in = 500) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> y(length + burn_in, 0.0);
  for (std::size_t t = 0; t < y.size(); ++t) {
    double v = sigma * n(rng);
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (t >= k + 1) v += a[k] * y[t - k - 1];
    }
    y[t] = v;
  }
  return {y.begin() + static_cast<std::ptrdiff_t>(burn_in), y.end()};
}

/// Weighted least squares through a QR factorization of the row-scaled design
/// matrix; solves the regularized problem by augmenting with sqrt(ridge) I.
inline Eigen::VectorXd least_squares_oracle(const std::vector<double>& y, int order, double forgetting = 1.0,
                                            double ridge = 0.0) {
  const auto n = static_cast<Eigen::Index>(y.size()) - order;
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(n + order, order);
  Eigen::VectorXd target = Eigen::VectorXd::Zero(n + order);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double w = std::sqrt(std::pow(forgetting, static_cast<double>(n - 1 - j)));
    for (int k = 0; k < order; ++k) design(j, k) = w * y[static_cast<std::size_t>(j + order - 1 - k)];
    target[j] = w * y[static_cast<std::size_t>(j + order)];
  }
  for (int k = 0; k < order; ++k) design(n + k, k) = std::sqrt(ridge);
  return design.colPivHouseholderQr().solve(target);
}

}  // namespace test_support
