#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "motionar/forecast/record.hpp"
#include "motionar/pose/sequence.hpp"

namespace motionar::bench {

struct Trend {
  enum class Kind { kNone, kSinusoid, kLinear };
  Kind kind = Kind::kNone;
  double amplitude = 0.0;
  double period = 1.0;  // frames
  double phase = 0.0;   // rad
  double slope = 0.0;   // per frame
  double offset = 0.0;

  [[nodiscard]] double at(double t) const;
};

struct DimensionSpec {
  std::vector<double> coefficients;
  double sigma = 1.0;
  Trend trend;
};

struct IndividualSpec {
  std::string id;
  std::vector<DimensionSpec> dims;
  int sequences = 1;
};

/// JSON form:
///   {"seed":1, "length":1000, "fps":25, "burn_in":200, "allow_unstable":false,
///    "individuals":[{"id":"S1", "sequences":2,
///       "coefficients":[0.9], "sigma":0.1, "trend":{"type":"sinusoid","amplitude":5,"period":50},
///       "dims":6}]}
/// "dims" is either a count (every dimension uses the individual's
/// coefficients, sigma and trend, with the sinusoid phase advanced by one
/// radian per dimension) or a list of objects overriding those fields.
/// Trend types: none, sinusoid (amplitude, period, phase, offset),
/// linear (slope, offset).
struct SyntheticSpec {
  std::vector<IndividualSpec> individuals;
  int length = 1000;
  std::uint64_t seed = 0;
  double fps = 25.0;
  int burn_in = 200;
  bool allow_unstable = false;

  [[nodiscard]] static SyntheticSpec from_json(const nlohmann::json& doc);
  [[nodiscard]] static SyntheticSpec load(const std::filesystem::path& path);
  /// Throws ConfigError on empty or inconsistent specs, sigma < 0, a
  /// dimension count that is not a multiple of 3, and unstable AR
  /// polynomials unless allow_unstable is set.
  void validate() const;
};

/// Largest root modulus of 1 - a_1 z^-1 - ... - a_P z^-P (companion matrix
/// spectral radius); below 1 means stationary.
[[nodiscard]] double spectral_radius(const std::vector<double>& coefficients);

struct SyntheticSequence {
  std::string name;  // <id>_<k>
  pose::PoseSequence sequence;
  pose::Frames trend;  // the noise-free part, T x D
};

struct SyntheticSet {
  std::vector<SyntheticSequence> sequences;
  nlohmann::json manifest;  // true parameters per individual
};

/// x_t = trend(t) + r_t with r_t an AR process driven by N(0, sigma^2), started
/// from zero and run for burn_in steps first. Positional data, fps from the spec.
/// Each (individual, sequence) pair draws from its own seeded stream.
[[nodiscard]] SyntheticSet synth(const SyntheticSpec& spec);

/// The trend as a base forecaster: at every anchor t in [M, T - N] the record
/// holds trend rows t .. t + N - 1.
[[nodiscard]] std::vector<forecast::ForecastRecord> trend_forecasts(const pose::Frames& trend, int observe,
                                                                    int predict);

/// Writes <dir>/<name>.csv plus sidecar for every sequence, <dir>/manifest.json
/// and, when observe and predict are positive, <dir>/<name>.base.jsonl.
void write_synthetic_set(const SyntheticSet& set, const std::filesystem::path& dir, int observe = 0,
                         int predict = 0);

}  // namespace motionar::bench
