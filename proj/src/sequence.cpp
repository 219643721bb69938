#include "motionar/pose/sequence.hpp"

#include <cmath>

#include "motionar/error.hpp"

namespace motionar::pose {

std::string_view to_string(Representation r) noexcept {
  switch (r) {
    case Representation::kPositionsCm:
      return "positions_cm";
    case Representation::kExpmap:
      return "expmap";
  }
  return "unknown";
}

Representation representation_from_string(std::string_view name) {
  if (name == "positions_cm") return Representation::kPositionsCm;
  if (name == "expmap") return Representation::kExpmap;
  throw ConfigError("unknown representation '" + std::string(name) + "' (expected positions_cm or expmap)");
}

void PoseSequence::validate() const {
  if (frames.rows() < 1) throw InvalidInput("pose sequence has no frames");
  if (frames.cols() < 1 || frames.cols() % 3 != 0) {
    throw InvalidInput("pose sequence dimension " + std::to_string(frames.cols()) +
                       " is not a positive multiple of 3");
  }
  if (!dim_labels.empty() && static_cast<Eigen::Index>(dim_labels.size()) != frames.cols()) {
    throw InvalidInput("pose sequence has " + std::to_string(dim_labels.size()) + " labels for " +
                       std::to_string(frames.cols()) + " dimensions");
  }
  if (!(fps > 0.0) || !std::isfinite(fps)) throw InvalidInput("pose sequence fps must be positive");
  for (Eigen::Index t = 0; t < frames.rows(); ++t) {
    if (!frames.row(t).allFinite()) {
      throw InvalidInput("pose sequence has a non-finite value in frame " + std::to_string(t));
    }
  }
}

Frames expmap_frames_to_euler(const Eigen::Ref<const Frames>& expmap) {
  if (expmap.cols() % 3 != 0) throw InvalidInput("exp-map frames must hold whole triples");
  Frames out(expmap.rows(), expmap.cols());
  for (Eigen::Index t = 0; t < expmap.rows(); ++t) {
    for (Eigen::Index l = 0; l < expmap.cols(); l += 3) {
      const EulerTriple e = expmap_to_euler(Vec3(expmap(t, l), expmap(t, l + 1), expmap(t, l + 2)));
      out(t, l) = e.first;
      out(t, l + 1) = e.second;
      out(t, l + 2) = e.third;
    }
  }
  return out;
}

PoseSequence center_and_normalize(const PoseSequence& seq, const Skeleton& skeleton) {
  if (seq.representation != Representation::kPositionsCm) {
    throw InvalidInput("center_and_normalize: requires positional data");
  }
  const auto joints = static_cast<Eigen::Index>(skeleton.size());
  if (seq.frames.cols() != 3 * joints) {
    throw InvalidInput("center_and_normalize: sequence has " + std::to_string(seq.frames.cols()) +
                       " dims, skeleton needs " + std::to_string(3 * joints));
  }
  PoseSequence out = seq;
  for (Eigen::Index t = 0; t < seq.frames.rows(); ++t) {
    const auto observed = [&](Eigen::Index j) { return Vec3(seq.frames.row(t).segment<3>(3 * j)); };
    std::vector<Vec3> placed(skeleton.size(), Vec3::Zero());
    for (Eigen::Index j = 1; j < joints; ++j) {
      const auto& joint = skeleton.joint(static_cast<std::size_t>(j));
      const Vec3 limb = observed(j) - observed(joint.parent);
      const double length = limb.norm();
      if (!(length > 0.0)) {
        throw DegenerateInput("center_and_normalize: zero-length limb '" + joint.name + "' in frame " +
                              std::to_string(t));
      }
      placed[static_cast<std::size_t>(j)] =
          placed[static_cast<std::size_t>(joint.parent)] + limb * (joint.offset.norm() / length);
    }
    for (Eigen::Index j = 0; j < joints; ++j) {
      out.frames.row(t).segment<3>(3 * j) = placed[static_cast<std::size_t>(j)].transpose();
    }
  }
  return out;
}

}  // namespace motionar::pose
