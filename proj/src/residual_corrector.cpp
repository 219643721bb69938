#include "motionar/forecast/residual_corrector.hpp"

#include <algorithm>
#include <string>

#include "motionar/error.hpp"

namespace motionar::forecast {

ResidualCorrector::ResidualCorrector(Eigen::Index dims, CorrectorOptions options)
    : dims_(dims), options_(options) {
  if (dims < 1) throw InvalidInput("residual corrector: dims must be >= 1");
  states_.reserve(static_cast<std::size_t>(dims));
  for (Eigen::Index d = 0; d < dims; ++d) {
    states_.push_back(ar::RlsState::init(options.order, options.forgetting, options.init_scale));
  }
  residuals_ = Eigen::MatrixXd::Zero(options.order + 1, dims);
}

void ResidualCorrector::reset() {
  for (auto& s : states_) s = ar::RlsState::init(options_.order, options_.forgetting, options_.init_scale);
  residuals_.setZero();
  filled_ = 0;
  head_ = -1;
  previous_anchor_.reset();
  previous_one_step_.resize(0);
}

CorrectedForecast ResidualCorrector::correct(std::size_t anchor, const Eigen::Ref<const Eigen::RowVectorXd>& observed,
                                             const Eigen::Ref<const Frames>& base_prediction) {
  if (observed.size() != dims_ || base_prediction.cols() != dims_) {
    throw InvalidInput("residual corrector: expected D = " + std::to_string(dims_));
  }
  if (base_prediction.rows() < 1) throw InvalidInput("residual corrector: empty base prediction");
  if (!observed.allFinite() || !base_prediction.allFinite()) throw InvalidInput("residual corrector: non-finite input");

  const int order = options_.order;
  const int ring = order + 1;
  const auto lag = [&](int k) { return residuals_.row(((head_ - k) % ring + ring) % ring); };

  if (previous_anchor_ && *previous_anchor_ + 1 == anchor) {
    head_ = (head_ + 1) % ring;
    residuals_.row(head_) = observed - previous_one_step_;
    filled_ = std::min(filled_ + 1, ring);
    if (filled_ == ring) {
      Eigen::VectorXd phi(order);
      for (Eigen::Index d = 0; d < dims_; ++d) {
        for (int k = 0; k < order; ++k) phi[k] = lag(k + 1)[d];
        states_[static_cast<std::size_t>(d)].update(phi, lag(0)[d]);
      }
    }
  } else {
    filled_ = 0;
    head_ = -1;
  }
  previous_anchor_ = anchor;
  previous_one_step_ = base_prediction.row(0);

  CorrectedForecast out;
  out.base = base_prediction;
  out.correction = Frames::Zero(base_prediction.rows(), dims_);
  const bool warm = states_.empty() || states_.front().sample_count() >= static_cast<std::uint64_t>(options_.warmup);
  if (filled_ >= order && warm) {
    std::vector<double> history(static_cast<std::size_t>(order));
    const auto horizon = static_cast<int>(base_prediction.rows());
    for (Eigen::Index d = 0; d < dims_; ++d) {
      for (int k = 0; k < order; ++k) history[static_cast<std::size_t>(order - 1 - k)] = lag(k)[d];
      out.correction.col(d) = states_[static_cast<std::size_t>(d)].forecast(history, horizon);
    }
  }
  out.corrected = out.base + out.correction;
  return out;
}

std::optional<Eigen::RowVectorXd> ResidualCorrector::last_residual() const {
  if (filled_ == 0) return std::nullopt;
  return residuals_.row(head_);
}

std::size_t ResidualCorrector::parameter_count() const noexcept {
  return static_cast<std::size_t>(dims_) * static_cast<std::size_t>(options_.order);
}

std::size_t ResidualCorrector::state_size() const noexcept {
  const auto p = static_cast<std::size_t>(options_.order);
  return static_cast<std::size_t>(dims_) * (p + p * p + (p + 1));
}

}  // namespace motionar::forecast
