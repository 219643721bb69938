#include "motionar/bench/synth.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "motionar/bench/ingest.hpp"
#include "motionar/error.hpp"
#include "motionar/forecast/external.hpp"

namespace motionar::bench {
namespace {

Trend trend_from_json(const nlohmann::json& doc) {
  Trend t;
  const auto type = doc.value("type", std::string("none"));
  if (type == "none") {
    t.kind = Trend::Kind::kNone;
  } else if (type == "sinusoid") {
    t.kind = Trend::Kind::kSinusoid;
    t.amplitude = doc.at("amplitude").get<double>();
    t.period = doc.at("period").get<double>();
    t.phase = doc.value("phase", 0.0);
    t.offset = doc.value("offset", 0.0);
    if (!(t.period > 0.0)) throw ConfigError("sinusoid trend needs period > 0");
  } else if (type == "linear") {
    t.kind = Trend::Kind::kLinear;
    t.slope = doc.at("slope").get<double>();
    t.offset = doc.value("offset", 0.0);
  } else {
    throw ConfigError("unknown trend type \"" + type + "\" (expected none, sinusoid or linear)");
  }
  return t;
}

nlohmann::json trend_to_json(const Trend& t) {
  switch (t.kind) {
    case Trend::Kind::kSinusoid:
      return {{"type", "sinusoid"}, {"amplitude", t.amplitude}, {"period", t.period}, {"phase", t.phase},
              {"offset", t.offset}};
    case Trend::Kind::kLinear:
      return {{"type", "linear"}, {"slope", t.slope}, {"offset", t.offset}};
    case Trend::Kind::kNone:
      break;
  }
  return {{"type", "none"}};
}

}  // namespace

double Trend::at(double t) const {
  switch (kind) {
    case Kind::kSinusoid:
      return offset + amplitude * std::sin(2.0 * std::numbers::pi * t / period + phase);
    case Kind::kLinear:
      return offset + slope * t;
    case Kind::kNone:
      break;
  }
  return 0.0;
}

SyntheticSpec SyntheticSpec::from_json(const nlohmann::json& doc) {
  try {
    SyntheticSpec spec;
    spec.seed = doc.value("seed", std::uint64_t{0});
    spec.length = doc.at("length").get<int>();
    spec.fps = doc.value("fps", 25.0);
    spec.burn_in = doc.value("burn_in", 200);
    spec.allow_unstable = doc.value("allow_unstable", false);
    for (const auto& ind : doc.at("individuals")) {
      IndividualSpec is;
      is.id = ind.at("id").get<std::string>();
      is.sequences = ind.value("sequences", 1);
      DimensionSpec shared;
      shared.coefficients = ind.value("coefficients", std::vector<double>{});
      shared.sigma = ind.value("sigma", 1.0);
      if (ind.contains("trend")) shared.trend = trend_from_json(ind.at("trend"));
      const auto& dims = ind.at("dims");
      if (dims.is_number_integer()) {
        const int count = dims.get<int>();
        if (count < 1) throw ConfigError("individual " + is.id + ": dims must be >= 1");
        for (int d = 0; d < count; ++d) {
          DimensionSpec ds = shared;
          ds.trend.phase += static_cast<double>(d);
          is.dims.push_back(ds);
        }
      } else {
        for (const auto& dj : dims) {
          DimensionSpec ds = shared;
          if (dj.contains("coefficients")) ds.coefficients = dj.at("coefficients").get<std::vector<double>>();
          if (dj.contains("sigma")) ds.sigma = dj.at("sigma").get<double>();
          if (dj.contains("trend")) ds.trend = trend_from_json(dj.at("trend"));
          is.dims.push_back(ds);
        }
      }
      spec.individuals.push_back(std::move(is));
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("synthetic spec: ") + e.what());
  }
}

SyntheticSpec SyntheticSpec::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("synthetic spec not found: " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void SyntheticSpec::validate() const {
  if (individuals.empty()) throw ConfigError("synthetic spec: no individuals");
  if (length < 1) throw ConfigError("synthetic spec: length must be >= 1");
  if (burn_in < 0) throw ConfigError("synthetic spec: burn_in must be >= 0");
  if (!(fps > 0.0)) throw ConfigError("synthetic spec: fps must be > 0");
  std::size_t dims = 0;
  for (const auto& ind : individuals) {
    if (ind.id.empty()) throw ConfigError("synthetic spec: empty individual id");
    if (ind.sequences < 1) throw ConfigError("individual " + ind.id + ": sequences must be >= 1");
    if (ind.dims.empty() || ind.dims.size() % 3 != 0) {
      throw ConfigError("individual " + ind.id + ": dimension count " + std::to_string(ind.dims.size()) +
                        " is not a positive multiple of 3");
    }
    if (dims == 0) dims = ind.dims.size();
    if (ind.dims.size() != dims) throw ConfigError("synthetic spec: individuals differ in dimension count");
    for (std::size_t d = 0; d < ind.dims.size(); ++d) {
      const auto& ds = ind.dims[d];
      if (!(ds.sigma >= 0.0)) throw ConfigError("individual " + ind.id + ": sigma must be >= 0");
      if (!allow_unstable) {
        const double rho = spectral_radius(ds.coefficients);
        if (!(rho < 1.0)) {
          throw ConfigError("individual " + ind.id + ", dimension " + std::to_string(d) +
                            ": AR polynomial is not stable (spectral radius " + std::to_string(rho) +
                            "); pass --allow-unstable to generate it anyway");
        }
      }
    }
  }
}

double spectral_radius(const std::vector<double>& coefficients) {
  const auto p = static_cast<Eigen::Index>(coefficients.size());
  if (p == 0) return 0.0;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index k = 0; k < p; ++k) companion(0, k) = coefficients[static_cast<std::size_t>(k)];
  for (Eigen::Index k = 1; k < p; ++k) companion(k, k - 1) = 1.0;
  return Eigen::EigenSolver<Eigen::MatrixXd>(companion, false).eigenvalues().cwiseAbs().maxCoeff();
}

SyntheticSet synth(const SyntheticSpec& spec) {
  spec.validate();
  SyntheticSet out;
  nlohmann::json individuals = nlohmann::json::array();
  const auto length = static_cast<std::size_t>(spec.length);
  const auto burn = static_cast<std::size_t>(spec.burn_in);
  for (std::size_t i = 0; i < spec.individuals.size(); ++i) {
    const auto& ind = spec.individuals[i];
    const auto dims = static_cast<Eigen::Index>(ind.dims.size());
    nlohmann::json names = nlohmann::json::array();
    for (int k = 0; k < ind.sequences; ++k) {
      std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                        static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(k)};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> normal(0.0, 1.0);

      SyntheticSequence s;
      s.name = ind.id + "_" + std::to_string(k);
      s.sequence.representation = pose::Representation::kPositionsCm;
      s.sequence.fps = spec.fps;
      s.sequence.subject_id = ind.id;
      s.sequence.action = "synthetic_" + std::to_string(k);
      s.sequence.frames.resize(spec.length, dims);
      s.trend.resize(spec.length, dims);
      for (Eigen::Index d = 0; d < dims; ++d) {
        const auto& ds = ind.dims[static_cast<std::size_t>(d)];
        const std::size_t p = ds.coefficients.size();
        std::vector<double> r(burn + length, 0.0);
        for (std::size_t t = 0; t < r.size(); ++t) {
          double v = ds.sigma * normal(rng);
          for (std::size_t j = 0; j < p && j < t; ++j) v += ds.coefficients[j] * r[t - 1 - j];
          r[t] = v;
        }
        for (std::size_t t = 0; t < length; ++t) {
          const double trend = ds.trend.at(static_cast<double>(t));
          s.trend(static_cast<Eigen::Index>(t), d) = trend;
          s.sequence.frames(static_cast<Eigen::Index>(t), d) = trend + r[burn + t];
        }
      }
      names.push_back(s.name);
      out.sequences.push_back(std::move(s));
    }
    nlohmann::json dims_json = nlohmann::json::array();
    for (const auto& ds : ind.dims) {
      dims_json.push_back({{"coefficients", ds.coefficients}, {"sigma", ds.sigma}, {"trend", trend_to_json(ds.trend)}});
    }
    individuals.push_back({{"id", ind.id}, {"sequences", std::move(names)}, {"dims", std::move(dims_json)}});
  }
  out.manifest = {{"seed", spec.seed},
                  {"length", spec.length},
                  {"fps", spec.fps},
                  {"burn_in", spec.burn_in},
                  {"representation", "positions_cm"},
                  {"individuals", std::move(individuals)}};
  return out;
}

std::vector<forecast::ForecastRecord> trend_forecasts(const pose::Frames& trend, int observe, int predict) {
  if (observe < 1 || predict < 1) throw InvalidInput("trend_forecasts: M and N must be >= 1");
  std::vector<forecast::ForecastRecord> out;
  for (Eigen::Index t = observe; t + predict <= trend.rows(); ++t) {
    out.push_back({static_cast<std::size_t>(t), trend.middleRows(t, predict), "trend"});
  }
  return out;
}

void write_synthetic_set(const SyntheticSet& set, const std::filesystem::path& dir, int observe, int predict) {
  std::filesystem::create_directories(dir);
  for (const auto& s : set.sequences) {
    write_sequence(dir / (s.name + ".csv"), s.sequence);
    if (observe > 0 && predict > 0) {
      std::ofstream out(dir / (s.name + ".base.jsonl"));
      if (!out) throw ConfigError("cannot write " + (dir / (s.name + ".base.jsonl")).string());
      forecast::write_external_predictions(out, trend_forecasts(s.trend, observe, predict));
    }
  }
  std::ofstream out(dir / "manifest.json");
  if (!out) throw ConfigError("cannot write " + (dir / "manifest.json").string());
  out << set.manifest.dump(2) << '\n';
}

}  // namespace motionar::bench
