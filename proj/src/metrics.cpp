#include "motionar/metrics/metrics.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "motionar/error.hpp"
#include "motionar/pose/rotation.hpp"

namespace motionar::metrics {
namespace {

void check_shapes(const Eigen::Ref<const Frames>& pred, const Eigen::Ref<const Frames>& truth, const char* what) {
  if (pred.rows() != truth.rows() || pred.cols() != truth.cols()) {
    throw InvalidInput(std::string(what) + ": shape mismatch " + std::to_string(pred.rows()) + "x" +
                       std::to_string(pred.cols()) + " vs " + std::to_string(truth.rows()) + "x" +
                       std::to_string(truth.cols()));
  }
  if (pred.rows() == 0 || pred.cols() == 0 || pred.cols() % 3 != 0) {
    throw InvalidInput(std::string(what) + ": inputs must be non-empty with whole triples");
  }
  if (!pred.allFinite() || !truth.allFinite()) throw InvalidInput(std::string(what) + ": non-finite input");
}

double position_step(const Eigen::Ref<const Frames>& pred, const Eigen::Ref<const Frames>& truth, Eigen::Index t) {
  double sum = 0.0;
  for (Eigen::Index c = 0; c < pred.cols(); c += 3) {
    sum += (pred.row(t).segment<3>(c) - truth.row(t).segment<3>(c)).norm();
  }
  return sum / static_cast<double>(pred.cols() / 3);
}

double angle_step(const Eigen::Ref<const Frames>& pred, const Eigen::Ref<const Frames>& truth, Eigen::Index t,
                  MeaNorm norm) {
  double sum = 0.0;
  for (Eigen::Index c = 0; c < pred.cols(); c += 3) {
    const pose::Vec3 d(pose::wrap_angle(pred(t, c) - truth(t, c)), pose::wrap_angle(pred(t, c + 1) - truth(t, c + 1)),
                       pose::wrap_angle(pred(t, c + 2) - truth(t, c + 2)));
    sum += norm == MeaNorm::kTriple ? d.norm() : d.cwiseAbs().sum();
  }
  const double terms = static_cast<double>(norm == MeaNorm::kTriple ? pred.cols() / 3 : pred.cols());
  return sum / terms;
}

}  // namespace

std::string_view to_string(Metric m) noexcept { return m == Metric::kMpje ? "mpje" : "mea"; }

Metric metric_from_string(std::string_view name) {
  if (name == "mpje") return Metric::kMpje;
  if (name == "mea") return Metric::kMea;
  throw ConfigError("unknown metric '" + std::string(name) + "' (expected mpje or mea)");
}

double mpje(const Eigen::Ref<const Frames>& pred, const Eigen::Ref<const Frames>& truth) {
  check_shapes(pred, truth, "mpje");
  double sum = 0.0;
  for (Eigen::Index t = 0; t < pred.rows(); ++t) sum += position_step(pred, truth, t);
  return sum / static_cast<double>(pred.rows());
}

double mea(const Eigen::Ref<const Frames>& pred, const Eigen::Ref<const Frames>& truth, MeaNorm norm) {
  check_shapes(pred, truth, "mea");
  double sum = 0.0;
  for (Eigen::Index t = 0; t < pred.rows(); ++t) sum += angle_step(pred, truth, t, norm);
  return sum / static_cast<double>(pred.rows());
}

std::vector<double> per_step_errors(const Eigen::Ref<const Frames>& pred, const Eigen::Ref<const Frames>& truth,
                                    Metric metric, MeaNorm norm) {
  check_shapes(pred, truth, metric == Metric::kMpje ? "mpje" : "mea");
  std::vector<double> out(static_cast<std::size_t>(pred.rows()));
  for (Eigen::Index t = 0; t < pred.rows(); ++t) {
    out[static_cast<std::size_t>(t)] =
        metric == Metric::kMpje ? position_step(pred, truth, t) : angle_step(pred, truth, t, norm);
  }
  return out;
}

double aggregate_objective(const std::vector<std::vector<double>>& per_individual) {
  if (per_individual.empty()) throw InvalidInput("aggregate_objective: no individuals");
  double total = 0.0;
  for (const auto& anchors : per_individual) {
    if (anchors.empty()) throw InvalidInput("aggregate_objective: individual without anchors");
    double sum = 0.0;
    for (double e : anchors) sum += e;
    total += sum / static_cast<double>(anchors.size());
  }
  return total / static_cast<double>(per_individual.size());
}

void ErrorCurve::add(std::span<const double> step_errors) {
  if (step_errors.size() > values.size()) {
    values.resize(step_errors.size(), 0.0);
    counts.resize(step_errors.size(), 0);
  }
  for (std::size_t h = 0; h < step_errors.size(); ++h) {
    ++counts[h];
    values[h] += (step_errors[h] - values[h]) / static_cast<double>(counts[h]);
  }
}

void ErrorCurve::merge(const ErrorCurve& other) {
  if (other.metric != metric) throw InvalidInput("ErrorCurve::merge: metric mismatch");
  if (other.values.size() > values.size()) {
    values.resize(other.values.size(), 0.0);
    counts.resize(other.values.size(), 0);
  }
  for (std::size_t h = 0; h < other.values.size(); ++h) {
    const std::size_t total = counts[h] + other.counts[h];
    if (total == 0) continue;
    values[h] = (values[h] * static_cast<double>(counts[h]) + other.values[h] * static_cast<double>(other.counts[h])) /
                static_cast<double>(total);
    counts[h] = total;
  }
}

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return {buf, result.ptr};
}

void ErrorCurve::write_csv(std::ostream& out) const {
  out << "horizon_ms,metric,value,count\n";
  for (std::size_t h = 0; h < values.size(); ++h) {
    if (counts[h] == 0) continue;
    out << format_double(static_cast<double>(h + 1) * 1000.0 / fps) << ',' << to_string(metric) << ','
        << format_double(values[h]) << ',' << counts[h] << '\n';
  }
}

namespace {

void check_pairing(pose::Representation representation, Metric metric) {
  if (metric == Metric::kMpje && representation != pose::Representation::kPositionsCm) {
    throw InvalidInput("MPJE needs positional data");
  }
  if (metric == Metric::kMea && representation != pose::Representation::kExpmap) {
    throw InvalidInput("MEA needs angle data");
  }
}

}  // namespace

std::vector<double> forecast_step_errors(const Eigen::Ref<const Frames>& pred, const Eigen::Ref<const Frames>& truth,
                                         pose::Representation representation, Metric metric, MeaNorm norm) {
  check_pairing(representation, metric);
  if (metric == Metric::kMea) {
    return per_step_errors(pose::expmap_frames_to_euler(pred), pose::expmap_frames_to_euler(truth), metric, norm);
  }
  return per_step_errors(pred, truth, metric, norm);
}

ErrorCurve error_curve(std::span<const forecast::ForecastRecord> records, const pose::PoseSequence& truth,
                       Metric metric, MeaNorm norm) {
  check_pairing(truth.representation, metric);
  ErrorCurve curve;
  curve.metric = metric;
  curve.fps = truth.fps;
  for (const auto& r : records) {
    if (r.dims() != truth.dims()) throw InvalidInput("error_curve: record dimension differs from the sequence");
    const auto end = static_cast<Eigen::Index>(r.anchor) + r.horizon();
    if (end > truth.length()) {
      throw InvalidInput("error_curve: anchor " + std::to_string(r.anchor) + " with horizon " +
                         std::to_string(r.horizon()) + " runs past the sequence end " +
                         std::to_string(truth.length()));
    }
    const auto target = truth.frames.middleRows(static_cast<Eigen::Index>(r.anchor), r.horizon());
    curve.add(forecast_step_errors(r.prediction, target, truth.representation, metric, norm));
    if (curve.source.empty()) curve.source = r.source;
  }
  return curve;
}

}  // namespace motionar::metrics
