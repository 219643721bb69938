#pragma once

#include <memory>
#include <string>

#include "motionar/forecast/record.hpp"

namespace motionar::forecast {

/// Base ("trend") forecaster. The harness calls observe() with the M most
/// recent frames (oldest first) ending just before `anchor`, then predict(N),
/// which must return exactly N x D.
class Predictor {
 public:
  virtual ~Predictor() = default;

  [[nodiscard]] virtual std::string name() const = 0;
  virtual void observe(const Eigen::Ref<const Frames>& window, std::size_t anchor) = 0;
  [[nodiscard]] virtual Frames predict(int horizon) = 0;
  /// Drops any memory carried across anchors.
  virtual void reset() {}
  [[nodiscard]] virtual std::size_t parameter_count() const { return 0; }
};

/// Repeats the last observed frame.
[[nodiscard]] Frames zero_velocity_predict(const Eigen::Ref<const Frames>& window, int horizon);

class ZeroVelocityPredictor final : public Predictor {
 public:
  [[nodiscard]] std::string name() const override { return "zero-velocity"; }
  void observe(const Eigen::Ref<const Frames>& window, std::size_t anchor) override;
  [[nodiscard]] Frames predict(int horizon) override;
  void reset() override { last_.resize(0, 0); }

 private:
  Frames last_;
};

}  // namespace motionar::forecast
