#pragma once

#include <cstddef>
#include <string>

#include "motionar/pose/sequence.hpp"

namespace motionar::forecast {

using pose::Frames;

/// A forecast issued at `anchor`: row h (0-based) predicts frame anchor + h.
/// Frames [anchor - M, anchor) were observable when it was made.
struct ForecastRecord {
  std::size_t anchor = 0;
  Frames prediction;    // N x D
  std::string source;   // "base", "corrected", or a baseline name

  [[nodiscard]] Eigen::Index horizon() const noexcept { return prediction.rows(); }
  [[nodiscard]] Eigen::Index dims() const noexcept { return prediction.cols(); }
};

}  // namespace motionar::forecast
