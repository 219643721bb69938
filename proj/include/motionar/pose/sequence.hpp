#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "motionar/pose/skeleton.hpp"

namespace motionar::pose {

/// Row-major so that one frame is a contiguous row.
using Frames = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Representation { kPositionsCm, kExpmap };

[[nodiscard]] std::string_view to_string(Representation r) noexcept;
/// Accepts "positions_cm" and "expmap"; throws ConfigError otherwise.
[[nodiscard]] Representation representation_from_string(std::string_view name);

/// One individual's T x D pose time series. Positions are stored as K joint
/// triples (D = 3K, cm); angles as L exponential-map triples (D = 3L, rad).
struct PoseSequence {
  Frames frames;
  Representation representation = Representation::kPositionsCm;
  double fps = 25.0;
  std::string subject_id;
  std::string action;
  std::vector<std::string> dim_labels;  // empty, or one label per column
  std::string euler_order = kEulerOrder;

  [[nodiscard]] Eigen::Index length() const noexcept { return frames.rows(); }
  [[nodiscard]] Eigen::Index dims() const noexcept { return frames.cols(); }

  /// Throws InvalidInput when T < 1, entries are non-finite, D is not a
  /// multiple of 3, labels disagree with D, or fps <= 0.
  void validate() const;
};

/// Converts exp-map frames (T x 3L) into Euler frames (T x 3L), triple by triple.
[[nodiscard]] Frames expmap_frames_to_euler(const Eigen::Ref<const Frames>& expmap);

/// Removes translation (root joint to the origin in every frame) and rescales
/// every limb to the skeleton's offset length while keeping its observed
/// direction. Requires positional data with one triple per skeleton joint.
[[nodiscard]] PoseSequence center_and_normalize(const PoseSequence& seq, const Skeleton& skeleton);

}  // namespace motionar::pose
