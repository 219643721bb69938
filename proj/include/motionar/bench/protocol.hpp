#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "motionar/bench/config.hpp"
#include "motionar/bench/ingest.hpp"
#include "motionar/forecast/predictor.hpp"
#include "motionar/forecast/ridge.hpp"
#include "motionar/metrics/metrics.hpp"

namespace motionar::bench {

using pose::Frames;

/// Read-through wrapper over a sequence's frames that records every index
/// handed out while a prediction is being formed.
class InstrumentedFrames {
 public:
  struct Access {
    std::size_t anchor;
    Eigen::Index index;
  };

  explicit InstrumentedFrames(const Frames& frames, bool keep_log = false) : frames_(frames), keep_log_(keep_log) {}

  [[nodiscard]] Eigen::Index length() const noexcept { return frames_.rows(); }
  /// Rows [begin, begin + count).
  [[nodiscard]] Frames rows(Eigen::Index begin, Eigen::Index count);

  void begin_prediction(std::size_t anchor);
  void end_prediction() { predicting_ = false; }

  /// Reads at an index >= the current anchor while predicting.
  [[nodiscard]] std::size_t future_reads() const noexcept { return future_reads_; }
  [[nodiscard]] std::size_t prediction_reads() const noexcept { return prediction_reads_; }
  [[nodiscard]] const std::vector<Access>& log() const noexcept { return log_; }

 private:
  const Frames& frames_;
  bool keep_log_;
  bool predicting_ = false;
  std::size_t anchor_ = 0;
  std::size_t future_reads_ = 0;
  std::size_t prediction_reads_ = 0;
  std::vector<Access> log_;
};

/// Builds a fresh base predictor for one sequence.
using PredictorFactory = std::function<std::unique_ptr<forecast::Predictor>(const NamedSequence&)>;

[[nodiscard]] PredictorFactory zero_velocity_factory();
[[nodiscard]] PredictorFactory ridge_factory(forecast::RidgeMap map);
/// `path` is a JSON-lines file (usable for a single sequence) or a directory
/// holding <name>.jsonl or <name>.base.jsonl per sequence.
[[nodiscard]] PredictorFactory external_factory(std::filesystem::path path);

struct AnchorResult {
  std::string sequence;
  std::string subject;
  std::size_t anchor = 0;
  std::string source;
  double error = 0.0;  // mean over the horizon
  std::vector<double> steps;
};

struct SequenceSummary {
  std::string name;
  std::string subject;
  std::size_t frames = 0;
  std::size_t anchors = 0;
  std::size_t future_reads = 0;
};

struct SkippedSequence {
  std::string name;
  std::size_t frames = 0;
  std::string reason;
};

/// Per-subject sums of anchor errors, enough to recompute the aggregate
/// objective after merging runs.
struct SubjectTotals {
  double sum = 0.0;
  std::size_t count = 0;
};

struct ProtocolResult {
  std::string base_name;
  std::size_t base_parameters = 0;
  std::size_t corrector_parameters = 0;
  std::size_t corrector_state = 0;
  std::vector<metrics::ErrorCurve> curves;  // "base", then "corrected" when enabled
  std::vector<AnchorResult> anchors;
  std::vector<SequenceSummary> sequences;
  std::vector<SkippedSequence> skipped;
  std::map<std::string, std::map<std::string, SubjectTotals>> subjects;  // source -> subject -> totals

  /// Mean over subjects of each subject's mean anchor error.
  [[nodiscard]] double objective(const std::string& source) const;
  /// One JSON object per line: sequence, subject, anchor, source, error, steps.
  void write_anchor_log(std::ostream& out) const;
};

/// Runs the windowed evaluation on every sequence.
///
/// Streaming: anchors t = M .. T - N in order. The base sees frames
/// [t - M, t) and, when correction is on, the corrector consumes frame t - 1
/// at every t; errors are recorded at t = M + k * stride. Legacy: only the
/// evaluated anchors are visited and predictor and corrector are reset at
/// each, so nothing carries over.
///
/// Sequences run on up to config.threads workers; the result is the same for
/// any thread count.
///
/// Sequences shorter than M + N are skipped and reported to `warnings`.
/// Throws InvalidInput when a sequence disagrees with the configured
/// representation or fps, or a predictor returns the wrong shape.
[[nodiscard]] ProtocolResult run_protocol(const ProtocolConfig& config, const std::vector<NamedSequence>& sequences,
                                          const PredictorFactory& base, std::ostream* warnings = nullptr);

}  // namespace motionar::bench
