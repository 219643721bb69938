#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "motionar/forecast/residual_corrector.hpp"
#include "motionar/metrics/metrics.hpp"
#include "motionar/pose/sequence.hpp"

namespace motionar::bench {

enum class Mode {
  kStreaming,  // predictor and corrector keep memory across anchors
  kLegacy,     // fixed windows, state reset at every anchor
};

[[nodiscard]] std::string_view to_string(Mode m) noexcept;
/// "streaming" or "legacy"; ConfigError otherwise.
[[nodiscard]] Mode mode_from_string(std::string_view name);

/// Subject ids per role. Defaults follow the usual Human3.6M protocol.
struct Split {
  std::vector<std::string> train{"S1", "S6", "S7", "S9"};
  std::vector<std::string> val{"S11"};
  std::vector<std::string> test{"S5"};
};

struct ProtocolConfig {
  int observe_frames = 10;  // M, 400 ms at 25 Hz
  int predict_frames = 25;  // N, 1 s at 25 Hz
  double fps = 25.0;
  pose::Representation representation = pose::Representation::kPositionsCm;
  Split split;
  int anchor_stride = 1;
  std::uint64_t seed = 0;
  Mode mode = Mode::kStreaming;
  metrics::Metric metric = metrics::Metric::kMpje;
  bool correct = true;
  forecast::CorrectorOptions corrector;
  int bic_max = 10;
  /// Worker threads for independent sequences, 0 for one per core. Not
  /// echoed in reports since it cannot change results.
  int threads = 0;

  /// Throws ConfigError on M < 1, N < 1, fps <= 0, stride < 1, order < 1,
  /// forgetting outside (0, 1], overlapping split ids or a metric that does
  /// not fit the representation.
  void validate() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

/// floor((T - M - N) / stride) + 1 evaluation anchors, or 0 when T < M + N.
[[nodiscard]] std::size_t anchor_count(std::size_t length, int observe, int predict, int stride);

}  // namespace motionar::bench
