#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "motionar/pose/rotation.hpp"

namespace motionar::pose {

struct Joint {
  std::string name;
  int parent = -1;  // -1 marks the root
  Vec3 offset = Vec3::Zero();  // cm, in the parent's frame
};

/// Joint tree in topological order: joint 0 is the only root and every other
/// joint's parent precedes it. Non-root offsets are finite and nonzero.
class Skeleton {
 public:
  explicit Skeleton(std::vector<Joint> joints);

  [[nodiscard]] std::size_t size() const noexcept { return joints_.size(); }
  [[nodiscard]] const Joint& joint(std::size_t j) const { return joints_.at(j); }
  [[nodiscard]] std::span<const Joint> joints() const noexcept { return joints_; }

  /// {"joints":[{"name":..,"parent":..,"offset":[x,y,z]}, ...]}
  [[nodiscard]] static Skeleton from_json(const nlohmann::json& doc);
  [[nodiscard]] static Skeleton load(const std::filesystem::path& path);
  [[nodiscard]] nlohmann::json to_json() const;

 private:
  std::vector<Joint> joints_;
};

enum class RootRotation {
  kApply,       // use the supplied root rotation
  kIdentity,    // root frame is the global frame; supplied root rotation ignored
};

/// Joint positions (cm) from local joint rotations.
///
/// Rotations compose child-first along the chain, R_tot(j) = R(j) R(parent) ... R(root),
/// and offsets are row vectors carried through the parent's accumulated rotation,
/// p(j) = p(parent) + offset(j)^T R_tot(parent). This is the row-vector
/// convention of the common Human3.6M tooling. The root sits at the origin.
[[nodiscard]] std::vector<Vec3> forward_kinematics(const Skeleton& skeleton,
                                                   std::span<const Quaternion> local_rotations,
                                                   RootRotation root = RootRotation::kApply);

}  // namespace motionar::pose
