#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"
#include "motionar/pose/sequence.hpp"

namespace motionar::personalize {

using pose::Frames;

/// Window features: the flattened M x D window (row by row) followed by the
/// lag-k sample autocorrelation of every dimension for each configured lag.
/// The autocorrelations carry the dynamics a linear score cannot read off
/// raw values. They are taken about zero, like the bank's AR models, unless
/// `centered` is set.
struct FeatureOptions {
  int window = 10;
  bool raw_window = true;
  std::vector<int> autocorrelation_lags{1, 2};
  bool centered = false;
};

[[nodiscard]] Eigen::VectorXd window_features(const Eigen::Ref<const Frames>& window, const FeatureOptions& options);
[[nodiscard]] std::size_t feature_count(Eigen::Index dims, const FeatureOptions& options);

struct LabeledSample {
  std::string label;
  Eigen::VectorXd features;
};

/// Features of every stride-th window of `frames`.
[[nodiscard]] std::vector<LabeledSample> windowed_samples(const Eigen::Ref<const Frames>& frames,
                                                          const std::string& label, const FeatureOptions& options,
                                                          int stride = 1);

struct ClassifierOptions {
  double lambda = 1e-3;  // L2 strength
  int epochs = 30;
  std::uint64_t seed = 0;
};

/// One-vs-rest linear max-margin classifier over standardized features.
class LinearClassifier {
 public:
  LinearClassifier() = default;

  [[nodiscard]] const std::vector<std::string>& classes() const noexcept { return classes_; }
  [[nodiscard]] std::size_t feature_dim() const noexcept { return static_cast<std::size_t>(mean_.size()); }
  [[nodiscard]] const Eigen::MatrixXd& weights() const noexcept { return weights_; }
  [[nodiscard]] const FeatureOptions& feature_options() const noexcept { return features_; }

  /// One score per class. Throws InvalidInput on a feature size mismatch.
  [[nodiscard]] Eigen::VectorXd scores(const Eigen::Ref<const Eigen::VectorXd>& features) const;
  /// Highest score; ties go to the earlier class.
  [[nodiscard]] const std::string& predict(const Eigen::Ref<const Eigen::VectorXd>& features) const;
  [[nodiscard]] const std::string& predict_window(const Eigen::Ref<const Frames>& window) const;

  /// {"classes":[...],"feature_mean":[...],"feature_scale":[...],
  ///  "weights":[[...]...],"features":{...}}; the last weight column is the bias.
  [[nodiscard]] nlohmann::json to_json() const;
  [[nodiscard]] static LinearClassifier from_json(const nlohmann::json& doc);
  void save(const std::filesystem::path& path) const;
  [[nodiscard]] static LinearClassifier load(const std::filesystem::path& path);

 private:
  friend LinearClassifier classifier_train(const std::vector<LabeledSample>& samples,
                                           const FeatureOptions& features, const ClassifierOptions& options);

  std::vector<std::string> classes_;  // sorted
  Eigen::VectorXd mean_;
  Eigen::VectorXd scale_;
  Eigen::MatrixXd weights_;  // classes x (features + 1)
  FeatureOptions features_;
};

/// Hinge loss with L2 regularization, minimized per class by stochastic
/// subgradient steps with step size 1 / (lambda t). Deterministic for a seed.
/// A single class yields a constant predictor.
[[nodiscard]] LinearClassifier classifier_train(const std::vector<LabeledSample>& samples,
                                                const FeatureOptions& features = {},
                                                const ClassifierOptions& options = {});

}  // namespace motionar::personalize
