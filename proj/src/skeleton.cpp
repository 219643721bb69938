#include "motionar/pose/skeleton.hpp"

#include <fstream>

#include "motionar/error.hpp"

namespace motionar::pose {

Skeleton::Skeleton(std::vector<Joint> joints) : joints_(std::move(joints)) {
  if (joints_.empty()) throw InvalidInput("skeleton: no joints");
  for (std::size_t j = 0; j < joints_.size(); ++j) {
    const Joint& joint = joints_[j];
    if (!joint.offset.allFinite()) {
      throw InvalidInput("skeleton: joint '" + joint.name + "' has a non-finite offset");
    }
    if (j == 0) {
      if (joint.parent != -1) throw InvalidInput("skeleton: joint 0 must be the root (parent -1)");
      continue;
    }
    if (joint.parent < 0) {
      throw InvalidInput("skeleton: joint '" + joint.name + "' is a second root");
    }
    if (static_cast<std::size_t>(joint.parent) >= j) {
      throw InvalidInput("skeleton: joint '" + joint.name + "' has parent index " +
                         std::to_string(joint.parent) + " >= its own index " + std::to_string(j));
    }
    if (joint.offset.isZero(0.0)) {
      throw InvalidInput("skeleton: non-root joint '" + joint.name + "' has a zero offset");
    }
  }
}

Skeleton Skeleton::from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("joints") || !doc["joints"].is_array()) {
    throw SchemaError("skeleton JSON: expected an object with a \"joints\" array");
  }
  std::vector<Joint> joints;
  for (const auto& item : doc["joints"]) {
    try {
      Joint joint;
      joint.name = item.at("name").get<std::string>();
      joint.parent = item.at("parent").get<int>();
      const auto& off = item.at("offset");
      if (!off.is_array() || off.size() != 3) throw SchemaError("offset must have 3 entries");
      joint.offset = {off[0].get<double>(), off[1].get<double>(), off[2].get<double>()};
      joints.push_back(std::move(joint));
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(std::string("skeleton JSON: ") + e.what());
    }
  }
  return Skeleton(std::move(joints));
}

Skeleton Skeleton::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open skeleton file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
  return from_json(doc);
}

nlohmann::json Skeleton::to_json() const {
  nlohmann::json joints = nlohmann::json::array();
  for (const Joint& j : joints_) {
    joints.push_back({{"name", j.name},
                      {"parent", j.parent},
                      {"offset", {j.offset.x(), j.offset.y(), j.offset.z()}}});
  }
  return {{"joints", joints}};
}

std::vector<Vec3> forward_kinematics(const Skeleton& skeleton, std::span<const Quaternion> local_rotations,
                                     RootRotation root) {
  if (local_rotations.size() != skeleton.size()) {
    throw InvalidInput("forward_kinematics: expected " + std::to_string(skeleton.size()) +
                       " rotations, got " + std::to_string(local_rotations.size()));
  }
  std::vector<Quaternion> total(skeleton.size());
  std::vector<Vec3> positions(skeleton.size(), Vec3::Zero());
  total[0] = root == RootRotation::kIdentity ? Quaternion::identity() : local_rotations[0];
  for (std::size_t j = 1; j < skeleton.size(); ++j) {
    const auto parent = static_cast<std::size_t>(skeleton.joint(j).parent);
    // offset^T R == R^T offset, and R(q)^T == R(conj(q)).
    positions[j] = positions[parent] + quat_rotate_vector(quat_conjugate(total[parent]), skeleton.joint(j).offset);
    total[j] = local_rotations[j] * total[parent];
  }
  return positions;
}

}  // namespace motionar::pose
