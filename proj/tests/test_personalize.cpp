#include <cmath>
#include <filesystem>
#include <random>

#include "doctest.h"

#include "motionar/error.hpp"
#include "motionar/personalize/classifier.hpp"
#include "motionar/personalize/model_bank.hpp"
#include "test_support.hpp"

using namespace motionar;
using personalize::Frames;

namespace {

Frames as_column(const std::vector<double>& y) {
  Frames f(static_cast<Eigen::Index>(y.size()), 1);
  for (std::size_t t = 0; t < y.size(); ++t) f(static_cast<Eigen::Index>(t), 0) = y[t];
  return f;
}

Frames stack(const std::vector<std::vector<double>>& cols) {
  Frames f(static_cast<Eigen::Index>(cols.front().size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t d = 0; d < cols.size(); ++d) {
    for (std::size_t t = 0; t < cols[d].size(); ++t) f(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(d)) = cols[d][t];
  }
  return f;
}

// Four individuals with well separated dynamics.
const std::vector<std::vector<double>> kDynamics{{0.9}, {-0.8}, {0.2, 0.5}, {1.2, -0.6}};

Frames individual_sequence(std::size_t who, int dims, std::size_t length, std::uint64_t seed) {
  std::vector<std::vector<double>> cols;
  for (int d = 0; d < dims; ++d) cols.push_back(test_support::simulate_ar(kDynamics[who], 1.0, length, seed * 31 + d));
  return stack(cols);
}

/// Brute-force mean squared one-step error of coefficients `a` on y[start..).
double one_step_mse(const std::vector<double>& y, const Eigen::VectorXd& a, std::size_t start) {
  double sum = 0.0;
  for (std::size_t t = start; t < y.size(); ++t) {
    double pred = 0.0;
    for (Eigen::Index k = 0; k < a.size(); ++k) pred += a[k] * y[t - 1 - static_cast<std::size_t>(k)];
    sum += (y[t] - pred) * (y[t] - pred);
  }
  return sum / static_cast<double>(y.size() - start);
}

}  // namespace

TEST_CASE("bank for one AR(1) individual") {
  const auto y = test_support::simulate_ar({0.7}, 1.0, 5000, 3);
  const auto bank = personalize::train_bank({{"S1", {as_column(y)}}}, {.max_order = 5});
  REQUIRE(bank.size() == 1);
  const auto& m = bank.at("S1").at(0);
  REQUIRE(m.order() == 1);
  CHECK(m.coefficients[0] == doctest::Approx(0.7).epsilon(0.05));
  const Eigen::VectorXd oracle = test_support::least_squares_oracle(y, 1);
  CHECK(std::abs(m.coefficients[0] - oracle[0]) < 1e-6);
}

TEST_CASE("bank records constant dimensions as order zero") {
  auto f = individual_sequence(0, 2, 500, 1);
  f.col(1).setConstant(4.0);
  const auto bank = personalize::train_bank({{"S1", {f}}});
  CHECK(bank.at("S1")[1].order() == 0);
  CHECK(bank.at("S1")[1].innovation_variance == 0.0);
  CHECK(bank.at("S1")[0].order() >= 1);
}

TEST_CASE("distinct individuals give distinct models") {
  const auto bank = personalize::train_bank(
      {{"A", {individual_sequence(0, 1, 3000, 1)}}, {"B", {individual_sequence(1, 1, 3000, 2)}}});
  CHECK(bank.at("A")[0].coefficients[0] == doctest::Approx(0.9).epsilon(0.05));
  CHECK(bank.at("B")[0].coefficients[0] == doctest::Approx(-0.8).epsilon(0.05));
  CHECK(bank.parameter_count() >= 2);
}

TEST_CASE("bank training uses every sequence of an individual") {
  const auto y1 = test_support::simulate_ar({0.5}, 1.0, 400, 10);
  const auto y2 = test_support::simulate_ar({0.5}, 1.0, 300, 11);
  const auto bank = personalize::train_bank({{"S1", {as_column(y1), as_column(y2)}}}, {.max_order = 1});
  // Pooled least squares without regressors across the boundary.
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto* y : {&y1, &y2}) {
    for (std::size_t t = 1; t < y->size(); ++t) {
      sxy += (*y)[t] * (*y)[t - 1];
      sxx += (*y)[t - 1] * (*y)[t - 1];
    }
  }
  REQUIRE(bank.at("S1")[0].order() == 1);
  CHECK(std::abs(bank.at("S1")[0].coefficients[0] - sxy / sxx) < 1e-6);
}

TEST_CASE("bank validation and persistence") {
  personalize::ModelBank bank(2, {.max_order = 3, .forgetting = 0.99, .ridge = 1e-6}, 50.0,
                              pose::Representation::kPositionsCm);
  ar::ArModel a{Eigen::Vector2d(0.5, -0.25), 0.3};
  ar::ArModel b{Eigen::VectorXd(0), 0.0};
  bank.add("S9", {a, b});
  bank.add("S11", {b, a});
  CHECK_THROWS_AS(bank.add("S9", {a, b}), InvalidInput);
  CHECK_THROWS_AS(bank.add("../x", {a, b}), InvalidInput);
  CHECK_THROWS_AS(bank.add("S1", {a}), InvalidInput);
  CHECK(bank.ids() == std::vector<std::string>{"S11", "S9"});
  CHECK(bank.max_order() == 2);

  const auto dir = std::filesystem::temp_directory_path() / "motionar_bank_roundtrip";
  std::filesystem::remove_all(dir);
  bank.save(dir);
  CHECK(std::filesystem::exists(dir / "S9" / "dim_1.json"));
  const auto back = personalize::ModelBank::load(dir);
  std::filesystem::remove_all(dir);
  CHECK(back.dims() == 2);
  CHECK(back.fps() == 50.0);
  CHECK(back.representation() == pose::Representation::kPositionsCm);
  CHECK(back.options().forgetting == 0.99);
  CHECK(back.ids() == bank.ids());
  CHECK(back.at("S9")[0].coefficients == a.coefficients);
  CHECK(back.at("S11")[1].innovation_variance == 0.3);
  CHECK_THROWS_AS((void)personalize::ModelBank::load(dir), ConfigError);
}

TEST_CASE("selection errors match a brute-force oracle") {
  personalize::ModelBank bank(1, {});
  bank.add("A", {ar::ArModel{Eigen::Vector2d(0.3, 0.2), 1.0}});
  bank.add("B", {ar::ArModel{Eigen::VectorXd::Constant(1, -0.4), 1.0}});
  const auto y = test_support::simulate_ar({0.6}, 1.0, 200, 4);
  const Eigen::MatrixXd e = personalize::selection_errors(bank, as_column(y));
  CHECK(e(0, 0) == doctest::Approx(one_step_mse(y, Eigen::Vector2d(0.3, 0.2), 2)).epsilon(1e-12));
  CHECK(e(1, 0) == doctest::Approx(one_step_mse(y, Eigen::VectorXd::Constant(1, -0.4), 2)).epsilon(1e-12));

  // Horizon variant: hand recursion.
  const auto h = personalize::selection_errors(bank, as_column(y),
                                               {.kind = personalize::SelectionError::kHorizon, .horizon = 3, .stride = 5});
  double sum = 0.0;
  int count = 0;
  for (std::size_t t = 2; t + 3 <= y.size(); t += 5) {
    double y1 = y[t - 1];
    for (int k = 0; k < 3; ++k) {
      const double f = -0.4 * y1;
      sum += (y[t + static_cast<std::size_t>(k)] - f) * (y[t + static_cast<std::size_t>(k)] - f);
      y1 = f;
      ++count;
    }
  }
  CHECK(h(1, 0) == doctest::Approx(sum / count).epsilon(1e-12));
  CHECK_THROWS_AS((void)personalize::selection_errors(bank, Frames::Zero(2, 1)), InvalidInput);
  CHECK_THROWS_AS((void)personalize::selection_errors(bank, Frames::Zero(20, 2)), InvalidInput);
}

TEST_CASE("oracle classification") {
  SUBCASE("single candidate") {
    personalize::ModelBank bank(1, {});
    bank.add("only", {ar::ArModel{Eigen::VectorXd::Constant(1, 0.1), 1.0}});
    CHECK(personalize::oracle_classify(bank, individual_sequence(1, 1, 100, 1)).ids.front() == "only");
    CHECK(personalize::oracle_classify_per_dimension(bank, individual_sequence(1, 1, 100, 1)).ids.front() == "only");
  }
  SUBCASE("identical candidates tie to the smaller id") {
    personalize::ModelBank bank(2, {});
    const ar::ArModel m{Eigen::VectorXd::Constant(1, 0.5), 1.0};
    bank.add("b", {m, m});
    bank.add("a", {m, m});
    const auto f = individual_sequence(0, 2, 100, 2);
    CHECK(personalize::oracle_classify(bank, f).ids.front() == "a");
    CHECK(personalize::oracle_classify_per_dimension(bank, f).ids == std::vector<std::string>{"a", "a"});
  }
  SUBCASE("the generating individual is selected") {
    personalize::GroupedSequences training;
    for (std::size_t i = 0; i < kDynamics.size(); ++i) {
      training["P" + std::to_string(i)] = {individual_sequence(i, 3, 2000, 100 + i)};
    }
    const auto bank = personalize::train_bank(training, {.max_order = 4});
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
      const std::size_t who = trial % kDynamics.size();
      const auto test = individual_sequence(who, 3, 300, 1000 + trial);
      CHECK(personalize::oracle_classify(bank, test).ids.front() == "P" + std::to_string(who));
    }
  }
}

TEST_CASE("per-dimension oracle picks each dimension's generator") {
  personalize::GroupedSequences training;
  for (std::size_t i = 0; i < kDynamics.size(); ++i) training["P" + std::to_string(i)] = {individual_sequence(i, 3, 2000, 200 + i)};
  const auto bank = personalize::train_bank(training, {.max_order = 4});
  const Frames test = stack({test_support::simulate_ar(kDynamics[2], 1.0, 400, 7),
                             test_support::simulate_ar(kDynamics[0], 1.0, 400, 8),
                             test_support::simulate_ar(kDynamics[3], 1.0, 400, 9)});
  const auto sel = personalize::oracle_classify_per_dimension(bank, test);
  CHECK(sel.ids == std::vector<std::string>{"P2", "P0", "P3"});
}

TEST_CASE("per-dimension oracle never loses to the per-person oracle") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coef(-0.9, 0.9);
  for (int trial = 0; trial < 200; ++trial) {
    personalize::ModelBank bank(4, {});
    for (int i = 0; i < 5; ++i) {
      personalize::IndividualModels models;
      for (int d = 0; d < 4; ++d) {
        const int p = static_cast<int>(rng() % 3);
        Eigen::VectorXd a(p);
        for (int k = 0; k < p; ++k) a[k] = coef(rng) / (k + 1);
        models.push_back({a, 1.0});
      }
      bank.add("i" + std::to_string(i), models);
    }
    Frames test(60, 4);
    std::normal_distribution<double> n(0.0, 1.0);
    for (Eigen::Index k = 0; k < test.size(); ++k) test.data()[k] = n(rng);
    for (const auto kind : {personalize::SelectionError::kOneStep, personalize::SelectionError::kHorizon}) {
      const personalize::SelectionOptions opts{.kind = kind, .horizon = 5, .stride = 3, .absolute = trial % 2 == 1};
      const auto person = personalize::oracle_classify(bank, test, opts);
      const auto dimension = personalize::oracle_classify_per_dimension(bank, test, opts);
      CHECK(dimension.error <= person.error);
      const Eigen::MatrixXd e = personalize::selection_errors(bank, test, opts);
      CHECK(personalize::selection_error(bank, e, person.ids) == person.error);
      for (const auto& id : bank.ids()) CHECK(person.error <= personalize::selection_error(bank, e, {id}));
    }
  }
}

TEST_CASE("oracle refit") {
  const auto f = individual_sequence(2, 2, 3000, 5);
  Frames g = f;
  g.col(1).setZero();
  const auto bank = personalize::train_bank({{"A", {g}}, {"B", {individual_sequence(3, 2, 3000, 6)}}}, {.max_order = 4});

  SUBCASE("same data reproduces the bank") {
    const auto refit = personalize::oracle_refit(bank, {"A"}, g);
    REQUIRE(refit.size() == 2);
    CHECK(refit[0].order() == bank.at("A")[0].order());
    CHECK((refit[0].coefficients - bank.at("A")[0].coefficients).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(refit[1].order() == 0);
  }
  SUBCASE("new dynamics with the same order") {
    // B is AR(2) (1.2, -0.6); test data from (1.0, -0.5).
    REQUIRE(bank.at("B")[0].order() == 2);
    const Frames test = stack({test_support::simulate_ar({1.0, -0.5}, 1.0, 5000, 12),
                               test_support::simulate_ar({1.0, -0.5}, 1.0, 5000, 13)});
    const auto refit = personalize::oracle_refit(bank, {"B", "B"}, test);
    CHECK(refit[0].coefficients[0] == doctest::Approx(1.0).epsilon(0.05));
    CHECK(refit[0].coefficients[1] == doctest::Approx(-0.5).epsilon(0.08));
  }
  SUBCASE("too short") {
    CHECK_THROWS_AS((void)personalize::oracle_refit(bank, {"B"}, Frames::Zero(2, 2)), InvalidInput);
    CHECK_THROWS_AS((void)personalize::oracle_refit(bank, {"Z"}, g), InvalidInput);
  }
}

TEST_CASE("window features") {
  personalize::FeatureOptions opts{.window = 4, .raw_window = true, .autocorrelation_lags = {1}};
  Frames w(4, 2);
  w << 1, 5, 2, 5, 3, 5, 4, 5;
  const Eigen::VectorXd f = personalize::window_features(w, opts);
  REQUIRE(f.size() == 10);
  CHECK(f[0] == 1.0);
  CHECK(f[1] == 5.0);
  CHECK(f[7] == 5.0);
  // About zero: (2 + 6 + 12) / 30 and (3 * 25) / (4 * 25).
  CHECK(f[8] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(f[9] == doctest::Approx(0.75).epsilon(1e-14));
  opts.centered = true;
  const Eigen::VectorXd g = personalize::window_features(w, opts);
  // Centered (-1.5, -0.5, 0.5, 1.5): lag-1 products 0.75 - 0.25 + 0.75 = 1.25 over 5.
  CHECK(g[8] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(g[9] == 0.0);
  CHECK(personalize::feature_count(2, opts) == 10);
  CHECK_THROWS_AS((void)personalize::window_features(Frames::Zero(3, 2), opts), InvalidInput);
  CHECK_THROWS_AS((void)personalize::window_features(w, {.window = 4, .autocorrelation_lags = {4}}), InvalidInput);
}

TEST_CASE("classifier with a single class") {
  std::vector<personalize::LabeledSample> samples;
  for (int i = 0; i < 5; ++i) samples.push_back({"S5", Eigen::VectorXd::Random(3)});
  const auto clf = personalize::classifier_train(samples);
  CHECK(clf.classes().size() == 1);
  CHECK(clf.predict(Eigen::VectorXd::Random(3)) == "S5");
  CHECK_THROWS_AS((void)clf.predict(Eigen::VectorXd::Random(4)), InvalidInput);
}

TEST_CASE("classifier separates opposite AR(1) dynamics") {
  const personalize::FeatureOptions feats{};
  int passing = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::vector<personalize::LabeledSample> train;
    for (const auto& [label, a] : {std::pair<std::string, double>{"pos", 0.95}, {"neg", -0.95}}) {
      const auto y = test_support::simulate_ar({a}, 1.0, 2000, seed * 7 + (a > 0));
      auto s = personalize::windowed_samples(as_column(y), label, feats, 5);
      train.insert(train.end(), s.begin(), s.end());
    }
    const auto clf = personalize::classifier_train(train, feats, {.seed = seed});
    int correct = 0;
    int total = 0;
    for (const auto& [label, a] : {std::pair<std::string, double>{"pos", 0.95}, {"neg", -0.95}}) {
      const auto y = test_support::simulate_ar({a}, 1.0, 1000, 5000 + seed * 7 + (a > 0));
      for (const auto& s : personalize::windowed_samples(as_column(y), label, feats, 10)) {
        correct += clf.predict(s.features) == label;
        ++total;
      }
    }
    const double accuracy = static_cast<double>(correct) / total;
    passing += accuracy >= 0.95;
    CHECK(accuracy >= 0.95);
  }
  CHECK(passing == 20);
}

TEST_CASE("classifier on indistinguishable classes does not crash") {
  std::vector<personalize::LabeledSample> samples;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 400; ++i) {
    Eigen::VectorXd f(3);
    for (int k = 0; k < 3; ++k) f[k] = n(rng);
    samples.push_back({"a", f});
    samples.push_back({"b", f});
  }
  const auto clf = personalize::classifier_train(samples);
  int correct = 0;
  for (const auto& s : samples) correct += clf.predict(s.features) == s.label;
  // Every feature vector appears once per class, so accuracy is exactly one half.
  CHECK(correct == 400);
  CHECK(clf.weights().allFinite());
}

TEST_CASE("classifier is deterministic and persists") {
  std::vector<personalize::LabeledSample> samples;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const std::string label = i % 3 == 0 ? "x" : i % 3 == 1 ? "y" : "z";
    Eigen::VectorXd f(4);
    for (int k = 0; k < 4; ++k) f[k] = n(rng) + (k == i % 3 ? 3.0 : 0.0);
    samples.push_back({label, f});
  }
  const auto a = personalize::classifier_train(samples, {}, {.seed = 4});
  const auto b = personalize::classifier_train(samples, {}, {.seed = 4});
  CHECK(a.weights() == b.weights());

  const auto path = std::filesystem::temp_directory_path() / "motionar_classifier.json";
  a.save(path);
  const auto back = personalize::LinearClassifier::load(path);
  std::filesystem::remove(path);
  CHECK(back.classes() == a.classes());
  int agree = 0;
  int correct = 0;
  for (const auto& s : samples) {
    agree += back.predict(s.features) == a.predict(s.features);
    correct += a.predict(s.features) == s.label;
    // Argmax is unchanged by a positive rescaling of all scores.
    const Eigen::VectorXd sc = a.scores(s.features);
    Eigen::Index i1 = 0;
    Eigen::Index i2 = 0;
    sc.maxCoeff(&i1);
    (sc * 7.5).maxCoeff(&i2);
    CHECK(i1 == i2);
  }
  CHECK(agree == 300);
  CHECK(correct >= 270);
}
