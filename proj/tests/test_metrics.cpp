#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "motionar/error.hpp"
#include "motionar/metrics/metrics.hpp"

using namespace motionar;
using namespace motionar::metrics;
using doctest::Approx;

namespace {

Frames random_frames(std::mt19937_64& rng, int rows, int cols, double spread) {
  std::uniform_real_distribution<double> u(-spread, spread);
  Frames f(rows, cols);
  for (Eigen::Index i = 0; i < f.size(); ++i) f.data()[i] = u(rng);
  return f;
}

// Double loops over steps and joints on raw arrays.
double mpje_oracle(const Frames& p, const Frames& x) {
  const int n = static_cast<int>(p.rows());
  const int k = static_cast<int>(p.cols() / 3);
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int q = 0; q < k; ++q) {
      double s = 0.0;
      for (int c = 0; c < 3; ++c) s += (p(j, 3 * q + c) - x(j, 3 * q + c)) * (p(j, 3 * q + c) - x(j, 3 * q + c));
      total += std::sqrt(s);
    }
  }
  return total / (n * k);
}

double mea_oracle(const Frames& p, const Frames& x) {
  const int n = static_cast<int>(p.rows());
  const int l = static_cast<int>(p.cols() / 3);
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int q = 0; q < l; ++q) {
      double s = 0.0;
      for (int c = 0; c < 3; ++c) {
        const double raw = p(j, 3 * q + c) - x(j, 3 * q + c);
        const double d = std::atan2(std::sin(raw), std::cos(raw));
        s += d * d;
      }
      total += std::sqrt(s);
    }
  }
  return total / (n * l);
}

pose::PoseSequence linear_motion(int frames, double step) {
  pose::PoseSequence seq;
  seq.frames = Frames::Zero(frames, 3);
  for (int t = 0; t < frames; ++t) seq.frames(t, 0) = step * t;
  return seq;
}

}  // namespace

TEST_CASE("mpje examples") {
  std::mt19937_64 rng(1);
  const Frames a = random_frames(rng, 4, 9, 50.0);
  CHECK(mpje(a, a) == 0.0);
  Frames shifted = a;
  for (Eigen::Index c = 0; c < a.cols(); c += 3) shifted.col(c).array() += 1.0;
  CHECK(mpje(shifted, a) == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS((void)mpje(a, random_frames(rng, 4, 6, 1.0)), InvalidInput);
}

TEST_CASE("mpje and mea match brute-force oracles") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const Frames p = random_frames(rng, 2, 9, 100.0);
    const Frames x = random_frames(rng, 2, 9, 100.0);
    CHECK(std::abs(mpje(p, x) - mpje_oracle(p, x)) < 1e-12);
    const Frames pa = random_frames(rng, 3, 12, 3.0);
    const Frames xa = random_frames(rng, 3, 12, 3.0);
    CHECK(std::abs(mea(pa, xa) - mea_oracle(pa, xa)) < 1e-12);
  }
}

TEST_CASE("mea examples") {
  Frames truth = Frames::Zero(1, 3);
  Frames pred = truth;
  CHECK(mea(pred, truth) == 0.0);
  pred(0, 1) = 0.1;
  CHECK(mea(pred, truth) == Approx(0.1));
  // A difference across the +-pi seam counts as the short way round.
  truth(0, 0) = std::numbers::pi - 0.05;
  pred = truth;
  pred(0, 0) = -std::numbers::pi + 0.05;
  CHECK(mea(pred, truth) == Approx(0.1));
  // Flattened variant divides by 3L.
  Frames p2 = Frames::Zero(1, 3);
  p2(0, 0) = 0.3;
  p2(0, 1) = 0.3;
  CHECK(mea(p2, Frames::Zero(1, 3), MeaNorm::kFlattened) == Approx(0.2));
}

TEST_CASE("metric properties: symmetry, triangle inequality, translation") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Frames a = random_frames(rng, 2, 6, 4.0);
    const Frames b = random_frames(rng, 2, 6, 4.0);
    const Frames c = random_frames(rng, 2, 6, 4.0);
    CHECK(mpje(a, b) == Approx(mpje(b, a)).epsilon(1e-14));
    CHECK(mea(a, b) == Approx(mea(b, a)).epsilon(1e-14));
    CHECK(mpje(a, c) <= mpje(a, b) + mpje(b, c) + 1e-12);
    CHECK(mea(a, c) <= mea(a, b) + mea(b, c) + 1e-12);
    CHECK(mpje(a, b) >= 0.0);

    const Eigen::Vector3d offset(0.3, -1.0, 2.0);
    Frames moved = a;
    for (Eigen::Index col = 0; col < a.cols(); col += 3) {
      for (Eigen::Index r = 0; r < a.rows(); ++r) moved.row(r).segment<3>(col) += offset.transpose();
    }
    CHECK(std::abs(mpje(moved, b) - mpje(a, b)) <= offset.norm() + 1e-12);
    CHECK(mpje(moved, a) == Approx(offset.norm()));
  }
}

TEST_CASE("aggregate_objective") {
  CHECK(aggregate_objective({{0.7}}) == 0.7);
  CHECK(aggregate_objective({{2.0, 2.0, 2.0}, {2.0}}) == Approx(2.0));
  const std::vector<std::vector<double>> uneven{{1.0, 2.0, 3.0, 4.0}, {10.0}};
  // Brute force of the double average: ((1+2+3+4)/4 + 10/1) / 2 = 6.25.
  double brute = 0.0;
  for (const auto& ind : uneven) {
    double s = 0.0;
    for (double e : ind) s += e;
    brute += s / static_cast<double>(ind.size());
  }
  brute /= static_cast<double>(uneven.size());
  CHECK(aggregate_objective(uneven) == Approx(brute));
  CHECK(aggregate_objective(uneven) != Approx(20.0 / 5.0));  // not the pooled mean
  CHECK_THROWS_AS((void)aggregate_objective({}), InvalidInput);
}

TEST_CASE("error_curve") {
  const pose::PoseSequence truth = linear_motion(40, 0.5);

  SUBCASE("perfect predictions") {
    std::vector<forecast::ForecastRecord> recs;
    for (std::size_t t = 5; t + 10 <= 40; t += 3) recs.push_back({t, truth.frames.middleRows(static_cast<Eigen::Index>(t), 10), "base"});
    const ErrorCurve c = error_curve(recs, truth, Metric::kMpje);
    CHECK(c.horizon() == 10);
    for (double v : c.values) CHECK(v == 0.0);
  }

  SUBCASE("zero velocity on linear motion grows linearly") {
    std::vector<forecast::ForecastRecord> recs;
    for (std::size_t t = 5; t + 10 <= 40; ++t) {
      Frames hold(10, 3);
      hold.rowwise() = truth.frames.row(static_cast<Eigen::Index>(t) - 1);
      recs.push_back({t, hold, "zero-velocity"});
    }
    const ErrorCurve c = error_curve(recs, truth, Metric::kMpje);
    for (std::size_t h = 0; h < c.horizon(); ++h) CHECK(c.values[h] == Approx(0.5 * static_cast<double>(h + 1)));
  }

  SUBCASE("single anchor equals its per-step errors") {
    Frames p = truth.frames.middleRows(7, 4);
    p(2, 1) += 3.0;
    const std::vector<forecast::ForecastRecord> recs{{7, p, "x"}};
    const ErrorCurve c = error_curve(recs, truth, Metric::kMpje);
    CHECK(c.values == std::vector<double>{0.0, 0.0, 3.0, 0.0});
    CHECK(c.counts == std::vector<std::size_t>{1, 1, 1, 1});
  }

  SUBCASE("errors") {
    const std::vector<forecast::ForecastRecord> late{{35, Frames::Zero(10, 3), "x"}};
    CHECK_THROWS_AS((void)error_curve(late, truth, Metric::kMpje), InvalidInput);
    CHECK_THROWS_AS((void)error_curve({}, truth, Metric::kMea), InvalidInput);
  }
}

TEST_CASE("error_curve MEA converts exp-map data to Euler triples") {
  pose::PoseSequence truth;
  truth.representation = pose::Representation::kExpmap;
  truth.frames = Frames::Zero(3, 3);
  truth.frames(2, 2) = 0.25;  // rotation about z only: Euler first angle equals 0.25
  const std::vector<forecast::ForecastRecord> recs{{1, Frames::Zero(2, 3), "x"}};
  const ErrorCurve c = error_curve(recs, truth, Metric::kMea);
  CHECK(c.values[0] == 0.0);
  CHECK(c.values[1] == Approx(0.25));
}

TEST_CASE("ErrorCurve CSV and merge") {
  ErrorCurve a;
  a.fps = 25.0;
  a.add(std::vector<double>{1.0, 2.0});
  ErrorCurve b;
  b.fps = 25.0;
  b.add(std::vector<double>{3.0, 4.0});
  b.add(std::vector<double>{5.0, 6.0});
  a.merge(b);
  CHECK(a.values[0] == Approx(3.0));
  CHECK(a.values[1] == Approx(4.0));
  CHECK(a.counts[0] == 3);
  std::ostringstream out;
  a.write_csv(out);
  CHECK(out.str() == "horizon_ms,metric,value,count\n40,mpje,3,3\n80,mpje,4,3\n");
  CHECK(format_double(0.1) == "0.1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
