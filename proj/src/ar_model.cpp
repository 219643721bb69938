#include "motionar/ar/ar_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include <Eigen/Cholesky>

#include "motionar/error.hpp"

namespace motionar::ar {

nlohmann::json ArModel::to_json() const {
  return {{"order", order()},
          {"coefficients", std::vector<double>(coefficients.data(), coefficients.data() + coefficients.size())},
          {"innovation_variance", innovation_variance}};
}

ArModel ArModel::from_json(const nlohmann::json& doc) {
  try {
    const int order = doc.at("order").get<int>();
    const auto coeffs = doc.at("coefficients").get<std::vector<double>>();
    if (order < 0 || static_cast<std::size_t>(order) != coeffs.size()) {
      throw SchemaError("AR model: order " + std::to_string(order) + " but " + std::to_string(coeffs.size()) +
                        " coefficients");
    }
    ArModel model;
    model.coefficients = Eigen::Map<const Eigen::VectorXd>(coeffs.data(), order);
    model.innovation_variance = doc.at("innovation_variance").get<double>();
    if (!model.coefficients.allFinite() || !std::isfinite(model.innovation_variance) ||
        model.innovation_variance < 0.0) {
      throw SchemaError("AR model: coefficients and innovation variance must be finite, variance >= 0");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("AR model JSON: ") + e.what());
  }
}

void ArModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << to_json().dump(2) << '\n';
}

ArModel ArModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open AR model " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

Eigen::VectorXd LaggedSeries::regressor(std::size_t t, int order) const {
  const auto p = static_cast<std::size_t>(order);
  if (t < p || t >= values_.size()) throw InvalidInput("regressor requested outside the usable range");
  Eigen::VectorXd phi(order);
  for (std::size_t k = 0; k < p; ++k) phi[static_cast<Eigen::Index>(k)] = values_[t - 1 - k];
  return phi;
}

namespace {

void check_fit_args(int order, double forgetting, double ridge) {
  if (order < 0) throw InvalidInput("AR order must be non-negative");
  if (!(forgetting > 0.0 && forgetting <= 1.0)) throw InvalidInput("forgetting factor must lie in (0, 1]");
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw InvalidInput("ridge must be finite and >= 0");
}

// Visits every usable (phi, y) pair, oldest first, across segments.
template <typename Visitor>
void for_each_sample(std::span<const LaggedSeries> segments, int order, Visitor&& visit) {
  Eigen::VectorXd phi(order);
  for (const LaggedSeries& s : segments) {
    for (std::size_t t = static_cast<std::size_t>(order); t < s.size(); ++t) {
      for (int k = 0; k < order; ++k) phi[k] = s[t - 1 - static_cast<std::size_t>(k)];
      visit(phi, s[t]);
    }
  }
}

}  // namespace

ArModel fit_ar_batch(std::span<const LaggedSeries> segments, int order, double forgetting, double ridge) {
  check_fit_args(order, forgetting, ridge);
  std::size_t n = 0;
  for (const LaggedSeries& s : segments) {
    for (double v : s.values()) {
      if (!std::isfinite(v)) throw InvalidInput("fit_ar_batch: non-finite sample");
    }
    n += s.usable(order);
  }
  if (n == 0) {
    throw InvalidInput("fit_ar_batch: series must be longer than the order " + std::to_string(order));
  }

  // Running accumulators reproduce the weights g^(n-1-j) exactly.
  Eigen::MatrixXd info = Eigen::MatrixXd::Zero(order, order);
  Eigen::VectorXd moment = Eigen::VectorXd::Zero(order);
  for_each_sample(segments, order, [&](const Eigen::VectorXd& phi, double y) {
    info = forgetting * info + phi * phi.transpose();
    moment = forgetting * moment + phi * y;
  });

  ArModel model;
  model.coefficients = Eigen::VectorXd::Zero(order);
  if (order > 0) {
    info.diagonal().array() += ridge;
    Eigen::LLT<Eigen::MatrixXd> llt(info);
    if (ridge == 0.0 && (llt.info() != Eigen::Success || !(llt.rcond() > 1e-13))) {
      throw RankDeficiency("fit_ar_batch: information matrix is singular at order " + std::to_string(order) +
                           "; use a ridge > 0");
    }
    if (llt.info() == Eigen::Success) {
      model.coefficients = llt.solve(moment);
    } else {
      model.coefficients = info.ldlt().solve(moment);
    }
    if (!model.coefficients.allFinite()) throw NumericalError("fit_ar_batch: non-finite coefficients");
  }

  double weighted_sq = 0.0;
  double weight_sum = 0.0;
  for_each_sample(segments, order, [&](const Eigen::VectorXd& phi, double y) {
    const double e = y - (order > 0 ? model.coefficients.dot(phi) : 0.0);
    weighted_sq = forgetting * weighted_sq + e * e;
    weight_sum = forgetting * weight_sum + 1.0;
  });
  model.innovation_variance = weighted_sq / weight_sum;
  return model;
}

ArModel fit_ar_batch(const LaggedSeries& series, int order, double forgetting, double ridge) {
  return fit_ar_batch(std::span<const LaggedSeries>(&series, 1), order, forgetting, ridge);
}

Eigen::VectorXd ar_predict(const Eigen::Ref<const Eigen::VectorXd>& coefficients, std::span<const double> history,
                           int horizon) {
  const auto order = static_cast<std::size_t>(coefficients.size());
  if (history.size() < order) {
    throw InvalidInput("ar_predict: history holds " + std::to_string(history.size()) + " values, order is " +
                       std::to_string(order));
  }
  if (horizon < 0) throw InvalidInput("ar_predict: negative horizon");
  // Chronological buffer: the last `order` observations followed by forecasts.
  std::vector<double> buffer(history.end() - static_cast<std::ptrdiff_t>(order), history.end());
  buffer.reserve(order + static_cast<std::size_t>(horizon));
  Eigen::VectorXd out(horizon);
  for (int h = 0; h < horizon; ++h) {
    double y = 0.0;
    for (std::size_t k = 0; k < order; ++k) y += coefficients[static_cast<Eigen::Index>(k)] * buffer[buffer.size() - 1 - k];
    out[h] = y;
    buffer.push_back(y);
  }
  return out;
}

BicSelection bic_order_select(std::span<const LaggedSeries> segments, int max_order, double forgetting,
                              double ridge) {
  if (max_order < 0) throw InvalidInput("bic_order_select: max_order must be >= 0");
  std::size_t n = 0;
  double mean_square = 0.0;
  for (const LaggedSeries& s : segments) {
    n += s.usable(max_order);
    for (std::size_t t = static_cast<std::size_t>(max_order); t < s.size(); ++t) mean_square += s[t] * s[t];
  }
  if (n == 0) throw InvalidInput("bic_order_select: series must be longer than max_order");
  mean_square /= static_cast<double>(n);
  const double zero_level = 1e-14 * mean_square;
  const double log_n = std::log(static_cast<double>(n));

  BicSelection best;
  double best_score = std::numeric_limits<double>::infinity();
  std::vector<LaggedSeries> trimmed(segments.size());
  for (int p = 0; p <= max_order; ++p) {
    // Start each segment so that targets are exactly those usable at max_order.
    for (std::size_t i = 0; i < segments.size(); ++i) {
      const std::size_t skip = static_cast<std::size_t>(max_order - p);
      trimmed[i] = segments[i].size() > skip ? segments[i].tail_from(skip) : LaggedSeries();
    }
    const ArModel model = fit_ar_batch(trimmed, p, forgetting, ridge);
    if (model.innovation_variance <= zero_level) {
      best.scores.push_back(-std::numeric_limits<double>::infinity());
      if (!best.deterministic) {
        best.deterministic = true;
        best.order = p;
      }
      continue;
    }
    const double score = static_cast<double>(n) * std::log(model.innovation_variance) + p * log_n;
    best.scores.push_back(score);
    if (!best.deterministic && score < best_score) {
      best_score = score;
      best.order = p;
    }
  }
  return best;
}

BicSelection bic_order_select(const LaggedSeries& series, int max_order, double forgetting, double ridge) {
  return bic_order_select(std::span<const LaggedSeries>(&series, 1), max_order, forgetting, ridge);
}

std::vector<double> unwrap_angles(std::span<const double> angles) {
  std::vector<double> out(angles.begin(), angles.end());
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double shift = 0.0;
  for (std::size_t t = 1; t < out.size(); ++t) {
    const double step = angles[t] - angles[t - 1];
    shift -= kTwoPi * std::round(step / kTwoPi);
    out[t] = angles[t] + shift;
  }
  return out;
}

}  // namespace motionar::ar
