#include "motionar/forecast/predictor.hpp"

#include "motionar/error.hpp"

namespace motionar::forecast {

Frames zero_velocity_predict(const Eigen::Ref<const Frames>& window, int horizon) {
  if (window.rows() < 1) throw InvalidInput("zero_velocity_predict: empty window");
  if (horizon < 0) throw InvalidInput("zero_velocity_predict: negative horizon");
  Frames out(horizon, window.cols());
  out.rowwise() = window.row(window.rows() - 1);
  return out;
}

void ZeroVelocityPredictor::observe(const Eigen::Ref<const Frames>& window, std::size_t /*anchor*/) {
  if (window.rows() < 1) throw InvalidInput("zero-velocity: empty window");
  last_ = window.bottomRows(1);
}

Frames ZeroVelocityPredictor::predict(int horizon) {
  if (last_.rows() == 0) throw InvalidInput("zero-velocity: predict before observe");
  return zero_velocity_predict(last_, horizon);
}

}  // namespace motionar::forecast
