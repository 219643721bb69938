#include "motionar/bench/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "motionar/error.hpp"

namespace motionar::bench {

std::string_view to_string(Mode m) noexcept { return m == Mode::kStreaming ? "streaming" : "legacy"; }

Mode mode_from_string(std::string_view name) {
  if (name == "streaming") return Mode::kStreaming;
  if (name == "legacy") return Mode::kLegacy;
  throw ConfigError("unknown mode \"" + std::string(name) + "\" (expected streaming or legacy)");
}

void ProtocolConfig::validate() const {
  if (observe_frames < 1) throw ConfigError("observe frames must be >= 1");
  if (predict_frames < 1) throw ConfigError("predict frames must be >= 1");
  if (!(fps > 0.0) || !std::isfinite(fps)) throw ConfigError("fps must be > 0");
  if (anchor_stride < 1) throw ConfigError("anchor stride must be >= 1");
  if (bic_max < 0) throw ConfigError("bic max order must be >= 0");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  if (corrector.order < 1) throw ConfigError("corrector order must be >= 1");
  if (!(corrector.forgetting > 0.0 && corrector.forgetting <= 1.0)) throw ConfigError("gamma must be in (0, 1]");
  if (!(corrector.init_scale > 0.0)) throw ConfigError("corrector init scale must be > 0");
  if (corrector.warmup < 0) throw ConfigError("corrector warmup must be >= 0");
  if (metric == metrics::Metric::kMpje && representation != pose::Representation::kPositionsCm) {
    throw ConfigError("metric mpje needs representation positions_cm");
  }
  if (metric == metrics::Metric::kMea && representation != pose::Representation::kExpmap) {
    throw ConfigError("metric mea needs representation expmap");
  }
  std::set<std::string> seen;
  for (const auto* role : {&split.train, &split.val, &split.test}) {
    std::set<std::string> own(role->begin(), role->end());
    for (const auto& id : own) {
      if (!seen.insert(id).second) throw ConfigError("subject " + id + " appears in more than one split");
    }
  }
}

nlohmann::json ProtocolConfig::to_json() const {
  return {{"observe_frames", observe_frames},
          {"predict_frames", predict_frames},
          {"fps", fps},
          {"representation", std::string(pose::to_string(representation))},
          {"split", {{"train", split.train}, {"val", split.val}, {"test", split.test}}},
          {"anchor_stride", anchor_stride},
          {"seed", seed},
          {"mode", std::string(to_string(mode))},
          {"metric", std::string(metrics::to_string(metric))},
          {"correct", correct},
          {"corrector", {{"order", corrector.order}, {"gamma", corrector.forgetting}, {"init_scale", corrector.init_scale}, {"warmup", corrector.warmup}}},
          {"bic_max", bic_max}};
}

std::size_t anchor_count(std::size_t length, int observe, int predict, int stride) {
  const auto need = static_cast<std::size_t>(observe + predict);
  if (length < need) return 0;
  return (length - need) / static_cast<std::size_t>(stride) + 1;
}

}  // namespace motionar::bench
