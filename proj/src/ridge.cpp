#include "motionar/forecast/ridge.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

#include "motionar/error.hpp"

namespace motionar::forecast {
namespace {

constexpr Eigen::Index kChunk = 256;

Eigen::RowVectorXd flatten(const Eigen::Ref<const Frames>& frames) {
  return Eigen::Map<const Eigen::RowVectorXd>(frames.data(), frames.size());
}

Eigen::RowVectorXd standardized(const RidgeMap& map, const Eigen::Ref<const Frames>& window) {
  Eigen::RowVectorXd z(window.size());
  for (Eigen::Index m = 0; m < window.rows(); ++m) {
    z.segment(m * map.dims, map.dims) = (window.row(m) - map.input_mean).cwiseQuotient(map.input_scale);
  }
  return z;
}

}  // namespace

std::vector<TrainingPair> make_training_pairs(const Frames& frames, int observe, int predict, int stride) {
  if (observe < 1 || predict < 1 || stride < 1) throw InvalidInput("make_training_pairs: M, N, stride must be >= 1");
  std::vector<TrainingPair> pairs;
  for (Eigen::Index t = observe; t + predict <= frames.rows(); t += stride) {
    pairs.push_back({frames.middleRows(t - observe, observe), frames.middleRows(t, predict)});
  }
  return pairs;
}

RidgeMap ridge_regression_fit(std::span<const TrainingPair> pairs, const RidgeOptions& options) {
  if (pairs.empty()) throw InvalidInput("ridge_regression_fit: no training pairs");
  if (!(options.lambda >= 0.0) || !std::isfinite(options.lambda)) {
    throw InvalidInput("ridge_regression_fit: lambda must be finite and >= 0");
  }
  RidgeMap map;
  map.observe_frames = static_cast<int>(pairs.front().input.rows());
  map.predict_frames = static_cast<int>(pairs.front().target.rows());
  map.dims = static_cast<int>(pairs.front().input.cols());
  const Eigen::Index d = map.dims;
  if (map.observe_frames < 1 || map.predict_frames < 1 || d < 1) throw InvalidInput("ridge_regression_fit: empty pair");
  for (const auto& p : pairs) {
    if (p.input.rows() != map.observe_frames || p.target.rows() != map.predict_frames || p.input.cols() != d ||
        p.target.cols() != d) {
      throw InvalidInput("ridge_regression_fit: training pairs differ in shape (expected " +
                         std::to_string(map.observe_frames) + "x" + std::to_string(d) + " -> " +
                         std::to_string(map.predict_frames) + "x" + std::to_string(d) + ")");
    }
    if (!p.input.allFinite() || !p.target.allFinite()) throw InvalidInput("ridge_regression_fit: non-finite data");
  }

  map.input_mean = Eigen::RowVectorXd::Zero(d);
  map.input_scale = Eigen::RowVectorXd::Ones(d);
  if (options.standardize) {
    Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(d);
    Eigen::RowVectorXd sq = Eigen::RowVectorXd::Zero(d);
    double count = 0.0;
    for (const auto& p : pairs) {
      sum += p.input.colwise().sum();
      sq += p.input.cwiseAbs2().colwise().sum();
      count += static_cast<double>(p.input.rows());
    }
    map.input_mean = sum / count;
    const Eigen::RowVectorXd var = (sq / count - map.input_mean.cwiseAbs2()).cwiseMax(0.0);
    for (Eigen::Index j = 0; j < d; ++j) map.input_scale[j] = var[j] > 1e-24 ? std::sqrt(var[j]) : 1.0;
  }

  const Eigen::Index in_dim = map.observe_frames * d;
  const Eigen::Index out_dim = map.predict_frames * d;
  const auto n = static_cast<double>(pairs.size());
  Eigen::RowVectorXd z_mean = Eigen::RowVectorXd::Zero(in_dim);
  Eigen::RowVectorXd y_mean = Eigen::RowVectorXd::Zero(out_dim);
  if (options.intercept) {
    for (const auto& p : pairs) {
      z_mean += standardized(map, p.input);
      y_mean += flatten(p.target);
    }
    z_mean /= n;
    y_mean /= n;
  }

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(in_dim, in_dim);
  Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(in_dim, out_dim);
  Eigen::MatrixXd zc(kChunk, in_dim);
  Eigen::MatrixXd yc(kChunk, out_dim);
  for (std::size_t start = 0; start < pairs.size(); start += kChunk) {
    const auto rows = static_cast<Eigen::Index>(std::min<std::size_t>(kChunk, pairs.size() - start));
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& p = pairs[start + static_cast<std::size_t>(r)];
      zc.row(r) = standardized(map, p.input) - z_mean;
      yc.row(r) = flatten(p.target) - y_mean;
    }
    gram.selfadjointView<Eigen::Lower>().rankUpdate(zc.topRows(rows).transpose());
    cross.noalias() += zc.topRows(rows).transpose() * yc.topRows(rows);
  }
  gram = gram.selfadjointView<Eigen::Lower>();
  gram.diagonal().array() += options.lambda;

  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (options.lambda == 0.0 && (llt.info() != Eigen::Success || !(llt.rcond() > 1e-13))) {
    throw RankDeficiency("ridge_regression_fit: design is rank deficient; use lambda > 0");
  }
  map.weights = llt.info() == Eigen::Success ? Eigen::MatrixXd(llt.solve(cross)) : Eigen::MatrixXd(gram.ldlt().solve(cross));
  map.offset = y_mean - z_mean * map.weights;
  if (!map.weights.allFinite()) throw NumericalError("ridge_regression_fit: non-finite weights");
  return map;
}

Frames ridge_regression_predict(const RidgeMap& map, const Eigen::Ref<const Frames>& window) {
  if (window.rows() != map.observe_frames || window.cols() != map.dims) {
    throw InvalidInput("ridge_regression_predict: window is " + std::to_string(window.rows()) + "x" +
                       std::to_string(window.cols()) + ", map expects " + std::to_string(map.observe_frames) + "x" +
                       std::to_string(map.dims));
  }
  const Eigen::RowVectorXd flat = standardized(map, window) * map.weights + map.offset;
  return Eigen::Map<const Frames>(flat.data(), map.predict_frames, map.dims);
}

void RidgePredictor::observe(const Eigen::Ref<const Frames>& window, std::size_t /*anchor*/) {
  if (window.rows() < map_.observe_frames) throw InvalidInput("ridge: window shorter than the fitted one");
  window_ = window.bottomRows(map_.observe_frames);
}

Frames RidgePredictor::predict(int horizon) {
  if (horizon > map_.predict_frames || horizon < 0) {
    throw InvalidInput("ridge: horizon " + std::to_string(horizon) + " outside the fitted " +
                       std::to_string(map_.predict_frames));
  }
  return ridge_regression_predict(map_, window_).topRows(horizon);
}

}  // namespace motionar::forecast
