#include "motionar/bench/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iterator>
#include <numeric>
#include <optional>
#include <thread>
#include <ostream>

#include "json.hpp"
#include "motionar/error.hpp"
#include "motionar/forecast/external.hpp"
#include "motionar/forecast/residual_corrector.hpp"

namespace motionar::bench {

Frames InstrumentedFrames::rows(Eigen::Index begin, Eigen::Index count) {
  if (begin < 0 || count < 0 || begin + count > frames_.rows()) {
    throw InvalidInput("frame range [" + std::to_string(begin) + ", " + std::to_string(begin + count) +
                       ") outside the sequence");
  }
  if (predicting_) {
    for (Eigen::Index i = begin; i < begin + count; ++i) {
      ++prediction_reads_;
      if (static_cast<std::size_t>(i) >= anchor_) ++future_reads_;
      if (keep_log_) log_.push_back({anchor_, i});
    }
  }
  return frames_.middleRows(begin, count);
}

void InstrumentedFrames::begin_prediction(std::size_t anchor) {
  anchor_ = anchor;
  predicting_ = true;
}

PredictorFactory zero_velocity_factory() {
  return [](const NamedSequence&) { return std::make_unique<forecast::ZeroVelocityPredictor>(); };
}

PredictorFactory ridge_factory(forecast::RidgeMap map) {
  return [map = std::move(map)](const NamedSequence&) { return std::make_unique<forecast::RidgePredictor>(map); };
}

PredictorFactory external_factory(std::filesystem::path path) {
  if (!std::filesystem::exists(path)) throw ConfigError("predictions not found: " + path.string());
  auto used = std::make_shared<std::atomic<std::size_t>>(0);
  return [path = std::move(path), used](const NamedSequence& seq) -> std::unique_ptr<forecast::Predictor> {
    std::filesystem::path file = path;
    if (std::filesystem::is_directory(path)) {
      file = path / (seq.name + ".jsonl");
      if (!std::filesystem::exists(file)) file = path / (seq.name + ".base.jsonl");
      if (!std::filesystem::exists(file)) {
        throw ConfigError("no predictions for sequence " + seq.name + " in " + path.string() + " (expected " +
                          seq.name + ".jsonl or " + seq.name + ".base.jsonl)");
      }
    } else if (++*used > 1) {
      throw ConfigError("predictions file " + path.string() +
                        " covers a single sequence; pass a directory for several sequences");
    }
    return std::make_unique<forecast::ExternalPredictor>(
        forecast::load_external_predictions(file, seq.sequence.dims()), "external");
  };
}

double ProtocolResult::objective(const std::string& source) const {
  const auto it = subjects.find(source);
  if (it == subjects.end() || it->second.empty()) return 0.0;
  std::vector<std::vector<double>> per_individual;
  for (const auto& [_, totals] : it->second) per_individual.push_back({totals.sum / static_cast<double>(totals.count)});
  return metrics::aggregate_objective(per_individual);
}

void ProtocolResult::write_anchor_log(std::ostream& out) const {
  for (const auto& a : anchors) {
    const nlohmann::json doc{{"sequence", a.sequence}, {"subject", a.subject}, {"anchor", a.anchor},
                             {"source", a.source},     {"error", a.error},     {"steps", a.steps}};
    out << doc.dump() << '\n';
  }
}

namespace {

struct SequenceOutcome {
  std::string base_name;
  std::size_t base_parameters = 0;
  std::size_t corrector_parameters = 0;
  std::size_t corrector_state = 0;
  SequenceSummary summary;
  std::vector<AnchorResult> anchors;
  metrics::ErrorCurve base_curve;
  metrics::ErrorCurve corrected_curve;
  std::map<std::string, SubjectTotals> totals;  // source -> totals for this sequence
};

SequenceOutcome evaluate_sequence(const ProtocolConfig& config, const NamedSequence& ns, const PredictorFactory& base) {
  const int m = config.observe_frames;
  const int n = config.predict_frames;
  const bool streaming = config.mode == Mode::kStreaming;
  const auto& seq = ns.sequence;
  const auto length = static_cast<std::size_t>(seq.length());

  SequenceOutcome out;
  out.base_curve = {config.metric, "base", config.fps, {}, {}};
  out.corrected_curve = {config.metric, "corrected", config.fps, {}, {}};

  auto predictor = base(ns);
  predictor->reset();
  out.base_name = predictor->name();
  out.base_parameters = predictor->parameter_count();
  std::optional<forecast::ResidualCorrector> corrector;
  if (config.correct) {
    corrector.emplace(seq.dims(), config.corrector);
    out.corrector_parameters = corrector->parameter_count();
    out.corrector_state = corrector->state_size();
  }

  InstrumentedFrames frames(seq.frames);
  out.summary = {ns.name, seq.subject_id, length, 0, 0};
  for (std::size_t t = static_cast<std::size_t>(m); t + static_cast<std::size_t>(n) <= length; ++t) {
    const bool evaluate = (t - static_cast<std::size_t>(m)) % static_cast<std::size_t>(config.anchor_stride) == 0;
    if (!evaluate && (!streaming || !corrector)) continue;

    frames.begin_prediction(t);
    const Frames window = frames.rows(static_cast<Eigen::Index>(t) - m, m);
    if (!streaming) {
      predictor->reset();
      if (corrector) corrector->reset();
    }
    predictor->observe(window, t);
    const Frames prediction = predictor->predict(n);
    if (prediction.rows() != n || prediction.cols() != seq.dims()) {
      throw InvalidInput(predictor->name() + " returned " + std::to_string(prediction.rows()) + "x" +
                         std::to_string(prediction.cols()) + ", expected " + std::to_string(n) + "x" +
                         std::to_string(seq.dims()));
    }
    Frames corrected;
    if (corrector) {
      const Frames last = frames.rows(static_cast<Eigen::Index>(t) - 1, 1);
      corrected = corrector->correct(t, last.row(0), prediction).corrected;
    }
    frames.end_prediction();
    if (!evaluate) continue;

    ++out.summary.anchors;
    const auto truth = seq.frames.middleRows(static_cast<Eigen::Index>(t), n);
    const auto record = [&](const std::string& source, const Frames& pred, metrics::ErrorCurve& curve) {
      auto steps = metrics::forecast_step_errors(pred, truth, seq.representation, config.metric);
      const double mean = std::accumulate(steps.begin(), steps.end(), 0.0) / static_cast<double>(steps.size());
      curve.add(steps);
      auto& totals = out.totals[source];
      totals.sum += mean;
      ++totals.count;
      out.anchors.push_back({ns.name, seq.subject_id, t, source, mean, std::move(steps)});
    };
    record("base", prediction, out.base_curve);
    if (corrector) record("corrected", corrected, out.corrected_curve);
  }
  out.summary.future_reads = frames.future_reads();
  return out;
}

}  // namespace

ProtocolResult run_protocol(const ProtocolConfig& config, const std::vector<NamedSequence>& sequences,
                            const PredictorFactory& base, std::ostream* warnings) {
  config.validate();
  const int m = config.observe_frames;
  const int n = config.predict_frames;

  ProtocolResult result;
  std::vector<const NamedSequence*> runnable;
  for (const auto& ns : sequences) {
    const auto& seq = ns.sequence;
    if (seq.representation != config.representation) {
      throw InvalidInput("sequence " + ns.name + " is " + std::string(pose::to_string(seq.representation)) +
                         ", protocol expects " + std::string(pose::to_string(config.representation)));
    }
    if (seq.fps != config.fps) {
      throw InvalidInput("sequence " + ns.name + " is at " + metrics::format_double(seq.fps) +
                         " fps, protocol uses " + metrics::format_double(config.fps));
    }
    const auto length = static_cast<std::size_t>(seq.length());
    if (length < static_cast<std::size_t>(m + n)) {
      const std::string reason = "needs at least " + std::to_string(m + n) + " frames";
      if (warnings) *warnings << "warning: skipping " << ns.name << " (" << length << " frames, " << reason << ")\n";
      result.skipped.push_back({ns.name, length, reason});
      continue;
    }
    runnable.push_back(&ns);
  }

  // Sequences are independent; each worker claims the next index. Results are
  // combined in input order so the output does not depend on scheduling.
  std::vector<std::optional<SequenceOutcome>> outcomes(runnable.size());
  std::vector<std::exception_ptr> failures(runnable.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < runnable.size(); i = next++) {
      try {
        outcomes[i] = evaluate_sequence(config, *runnable[i], base);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  std::size_t threads = config.threads > 0 ? static_cast<std::size_t>(config.threads)
                                           : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, runnable.size());
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  metrics::ErrorCurve base_curve{config.metric, "base", config.fps, {}, {}};
  metrics::ErrorCurve corrected_curve{config.metric, "corrected", config.fps, {}, {}};
  for (auto& o : outcomes) {
    if (result.base_name.empty()) {
      result.base_name = o->base_name;
      result.base_parameters = o->base_parameters;
    }
    result.corrector_parameters = o->corrector_parameters;
    result.corrector_state = o->corrector_state;
    base_curve.merge(o->base_curve);
    corrected_curve.merge(o->corrected_curve);
    for (const auto& [source, totals] : o->totals) {
      auto& dst = result.subjects[source][o->summary.subject];
      dst.sum += totals.sum;
      dst.count += totals.count;
    }
    std::move(o->anchors.begin(), o->anchors.end(), std::back_inserter(result.anchors));
    result.sequences.push_back(o->summary);
  }

  result.curves.push_back(std::move(base_curve));
  if (config.correct) result.curves.push_back(std::move(corrected_curve));
  return result;
}

}  // namespace motionar::bench
