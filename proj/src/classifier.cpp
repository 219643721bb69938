#include "motionar/personalize/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "motionar/error.hpp"

namespace motionar::personalize {
namespace {

void check_feature_options(const FeatureOptions& options) {
  if (options.window < 1) throw InvalidInput("classifier features: window must be >= 1");
  if (!options.raw_window && options.autocorrelation_lags.empty()) {
    throw InvalidInput("classifier features: no features selected");
  }
  for (int k : options.autocorrelation_lags) {
    if (k < 1 || k >= options.window) {
      throw InvalidInput("classifier features: autocorrelation lag " + std::to_string(k) + " outside 1.." +
                         std::to_string(options.window - 1));
    }
  }
}

}  // namespace

std::size_t feature_count(Eigen::Index dims, const FeatureOptions& options) {
  const auto d = static_cast<std::size_t>(dims);
  return (options.raw_window ? static_cast<std::size_t>(options.window) * d : 0) +
         options.autocorrelation_lags.size() * d;
}

Eigen::VectorXd window_features(const Eigen::Ref<const Frames>& window, const FeatureOptions& options) {
  check_feature_options(options);
  if (window.rows() != options.window) {
    throw InvalidInput("classifier features: window has " + std::to_string(window.rows()) + " frames, expected " +
                       std::to_string(options.window));
  }
  const Eigen::Index dims = window.cols();
  Eigen::VectorXd out(static_cast<Eigen::Index>(feature_count(dims, options)));
  Eigen::Index pos = 0;
  if (options.raw_window) {
    for (Eigen::Index t = 0; t < window.rows(); ++t) {
      for (Eigen::Index d = 0; d < dims; ++d) out[pos++] = window(t, d);
    }
  }
  for (int k : options.autocorrelation_lags) {
    for (Eigen::Index d = 0; d < dims; ++d) {
      const Eigen::VectorXd c = window.col(d).array() - (options.centered ? window.col(d).mean() : 0.0);
      const double denom = c.squaredNorm();
      const Eigen::Index n = window.rows() - k;
      out[pos++] = denom > 1e-300 ? c.tail(n).dot(c.head(n)) / denom : 0.0;
    }
  }
  return out;
}

std::vector<LabeledSample> windowed_samples(const Eigen::Ref<const Frames>& frames, const std::string& label,
                                            const FeatureOptions& options, int stride) {
  if (stride < 1) throw InvalidInput("windowed_samples: stride must be >= 1");
  std::vector<LabeledSample> out;
  for (Eigen::Index t = options.window; t <= frames.rows(); t += stride) {
    out.push_back({label, window_features(frames.middleRows(t - options.window, options.window), options)});
  }
  return out;
}

LinearClassifier classifier_train(const std::vector<LabeledSample>& samples, const FeatureOptions& features,
                                  const ClassifierOptions& options) {
  if (samples.empty()) throw InvalidInput("classifier_train: no samples");
  if (!(options.lambda > 0.0) || options.epochs < 1) {
    throw InvalidInput("classifier_train: need lambda > 0 and epochs >= 1");
  }
  const Eigen::Index f = samples.front().features.size();
  if (f < 1) throw InvalidInput("classifier_train: empty feature vectors");
  for (const auto& s : samples) {
    if (s.features.size() != f) throw InvalidInput("classifier_train: feature vectors differ in size");
    if (!s.features.allFinite()) throw InvalidInput("classifier_train: non-finite feature");
  }

  LinearClassifier clf;
  clf.features_ = features;
  for (const auto& s : samples) clf.classes_.push_back(s.label);
  std::sort(clf.classes_.begin(), clf.classes_.end());
  clf.classes_.erase(std::unique(clf.classes_.begin(), clf.classes_.end()), clf.classes_.end());

  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd z(n, f + 1);
  for (Eigen::Index i = 0; i < n; ++i) z.row(i).head(f) = samples[static_cast<std::size_t>(i)].features.transpose();
  clf.mean_ = z.leftCols(f).colwise().mean().transpose();
  clf.scale_ = ((z.leftCols(f).rowwise() - clf.mean_.transpose()).colwise().squaredNorm() / static_cast<double>(n))
                   .cwiseSqrt()
                   .transpose();
  for (Eigen::Index j = 0; j < f; ++j) {
    if (!(clf.scale_[j] > 1e-12)) clf.scale_[j] = 1.0;
  }
  z.leftCols(f) = (z.leftCols(f).rowwise() - clf.mean_.transpose()).array().rowwise() / clf.scale_.transpose().array();
  z.col(f).setOnes();

  const auto classes = static_cast<Eigen::Index>(clf.classes_.size());
  clf.weights_ = Eigen::MatrixXd::Zero(classes, f + 1);
  if (classes == 1) return clf;

  std::vector<Eigen::Index> labels(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    labels[i] = std::lower_bound(clf.classes_.begin(), clf.classes_.end(), samples[i].label) - clf.classes_.begin();
  }
  const double radius = 1.0 / std::sqrt(options.lambda);
  std::vector<Eigen::Index> order(samples.size());
  for (Eigen::Index c = 0; c < classes; ++c) {
    std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(c));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    Eigen::VectorXd w = Eigen::VectorXd::Zero(f + 1);
    Eigen::VectorXd average = Eigen::VectorXd::Zero(f + 1);
    double averaged = 0.0;
    double step = 0.0;
    for (int epoch = 0; epoch < options.epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      for (Eigen::Index i : order) {
        step += 1.0;
        const double eta = 1.0 / (options.lambda * step);
        const double y = labels[static_cast<std::size_t>(i)] == c ? 1.0 : -1.0;
        const double margin = y * z.row(i).dot(w);
        w *= 1.0 - eta * options.lambda;
        if (margin < 1.0) w += eta * y * z.row(i).transpose();
        const double norm = w.norm();
        if (norm > radius) w *= radius / norm;
        // Iterates from the second half of training are averaged.
        if (2 * epoch >= options.epochs) {
          averaged += 1.0;
          average += (w - average) / averaged;
        }
      }
    }
    clf.weights_.row(c) = average.transpose();
  }
  return clf;
}

Eigen::VectorXd LinearClassifier::scores(const Eigen::Ref<const Eigen::VectorXd>& features) const {
  if (features.size() != mean_.size()) {
    throw InvalidInput("classifier: expected " + std::to_string(mean_.size()) + " features, got " +
                       std::to_string(features.size()));
  }
  const Eigen::Index f = mean_.size();
  return weights_.leftCols(f) * (features - mean_).cwiseQuotient(scale_) + weights_.col(f);
}

const std::string& LinearClassifier::predict(const Eigen::Ref<const Eigen::VectorXd>& features) const {
  if (classes_.empty()) throw InvalidInput("classifier: not trained");
  const Eigen::VectorXd s = scores(features);
  Eigen::Index best = 0;
  for (Eigen::Index c = 1; c < s.size(); ++c) {
    if (s[c] > s[best]) best = c;
  }
  return classes_[static_cast<std::size_t>(best)];
}

const std::string& LinearClassifier::predict_window(const Eigen::Ref<const Frames>& window) const {
  return predict(window_features(window, features_));
}

nlohmann::json LinearClassifier::to_json() const {
  nlohmann::json w = nlohmann::json::array();
  for (Eigen::Index c = 0; c < weights_.rows(); ++c) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < weights_.cols(); ++j) row.push_back(weights_(c, j));
    w.push_back(std::move(row));
  }
  return {{"classes", classes_},
          {"feature_mean", std::vector<double>(mean_.data(), mean_.data() + mean_.size())},
          {"feature_scale", std::vector<double>(scale_.data(), scale_.data() + scale_.size())},
          {"weights", std::move(w)},
          {"features",
           {{"window", features_.window},
            {"raw_window", features_.raw_window},
            {"autocorrelation_lags", features_.autocorrelation_lags},
            {"centered", features_.centered}}}};
}

LinearClassifier LinearClassifier::from_json(const nlohmann::json& doc) {
  try {
    LinearClassifier clf;
    clf.classes_ = doc.at("classes").get<std::vector<std::string>>();
    const auto mean = doc.at("feature_mean").get<std::vector<double>>();
    const auto scale = doc.at("feature_scale").get<std::vector<double>>();
    const auto weights = doc.at("weights").get<std::vector<std::vector<double>>>();
    const auto& feats = doc.at("features");
    clf.features_.window = feats.at("window").get<int>();
    clf.features_.raw_window = feats.at("raw_window").get<bool>();
    clf.features_.autocorrelation_lags = feats.at("autocorrelation_lags").get<std::vector<int>>();
    clf.features_.centered = feats.at("centered").get<bool>();
    if (clf.classes_.empty() || !std::is_sorted(clf.classes_.begin(), clf.classes_.end())) {
      throw SchemaError("classifier: classes must be a non-empty sorted list");
    }
    if (mean.empty() || scale.size() != mean.size() || weights.size() != clf.classes_.size()) {
      throw SchemaError("classifier: inconsistent sizes");
    }
    clf.mean_ = Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
    clf.scale_ = Eigen::Map<const Eigen::VectorXd>(scale.data(), static_cast<Eigen::Index>(scale.size()));
    const auto cols = static_cast<Eigen::Index>(mean.size() + 1);
    clf.weights_.resize(static_cast<Eigen::Index>(weights.size()), cols);
    for (std::size_t c = 0; c < weights.size(); ++c) {
      if (static_cast<Eigen::Index>(weights[c].size()) != cols) {
        throw SchemaError("classifier: weight row " + std::to_string(c) + " has " + std::to_string(weights[c].size()) +
                          " entries, expected " + std::to_string(cols));
      }
      for (Eigen::Index j = 0; j < cols; ++j) clf.weights_(static_cast<Eigen::Index>(c), j) = weights[c][static_cast<std::size_t>(j)];
    }
    return clf;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("classifier: ") + e.what());
  }
}

void LinearClassifier::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << to_json().dump(2) << '\n';
}

LinearClassifier LinearClassifier::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("classifier file not found: " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

}  // namespace motionar::personalize
