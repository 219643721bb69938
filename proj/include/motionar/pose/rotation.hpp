#pragma once

#include <Eigen/Core>

namespace motionar::pose {

using Vec3 = Eigen::Vector3d;
using RotationMatrix = Eigen::Matrix3d;

/// Quaternion stored as [x, y, z, w]: vector part (x, y, z), scalar part w.
///
/// Products and conjugates are returned as computed. Everything built from a
/// rotation (exponential map, rotation matrix, Euler angles) is canonicalized
/// to w >= 0 so that the double cover does not leak into comparisons.
struct Quaternion {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double w = 1.0;

  [[nodiscard]] static constexpr Quaternion identity() noexcept { return {}; }
  [[nodiscard]] Vec3 vec() const noexcept { return {x, y, z}; }
  [[nodiscard]] double norm() const noexcept;
  [[nodiscard]] bool is_finite() const noexcept;
  /// Same rotation with w >= 0.
  [[nodiscard]] Quaternion canonical() const noexcept;

  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// Euler angles in radians for the intrinsic Z-X-Y order:
/// R = Rz(first) * Rx(second) * Ry(third). Each angle lies in (-pi, pi].
struct EulerTriple {
  double first = 0.0;
  double second = 0.0;
  double third = 0.0;
};

/// Label stored in sequence metadata for the Euler convention above.
inline constexpr const char* kEulerOrder = "ZXY";

/// Wraps an angle into (-pi, pi].
[[nodiscard]] double wrap_angle(double radians) noexcept;

/// Exponential map from an axis-angle vector to a unit quaternion (w >= 0).
[[nodiscard]] Quaternion expmap_to_quat(const Vec3& v);

/// Inverse of expmap_to_quat. The result has magnitude in [0, pi]; q and -q map
/// to the same vector. Throws InvalidInput unless |q| is within 1e-6 of one.
[[nodiscard]] Vec3 quat_to_expmap(const Quaternion& q);

/// Reduces the rotation angle mod 2*pi into [0, pi], flipping the axis when needed.
[[nodiscard]] Vec3 canonicalize_expmap(const Vec3& v);

/// Hamilton product [r1*v2 + r2*v1 + v1 x v2, r1*r2 - v1.v2].
[[nodiscard]] Quaternion quat_multiply(const Quaternion& a, const Quaternion& b);
[[nodiscard]] inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return quat_multiply(a, b);
}

[[nodiscard]] Quaternion quat_conjugate(const Quaternion& q) noexcept;

/// y = q x q̄ with x embedded as a pure quaternion.
[[nodiscard]] Vec3 quat_rotate_vector(const Quaternion& q, const Vec3& x);

[[nodiscard]] RotationMatrix quat_to_rotmat(const Quaternion& q);
[[nodiscard]] Quaternion rotmat_to_quat(const RotationMatrix& r);

/// True when R^T R = I and det R = 1 within `tolerance`.
[[nodiscard]] bool is_rotation(const RotationMatrix& r, double tolerance = 1e-9) noexcept;

/// At gimbal lock (second = +-pi/2) the third angle is set to 0 and the
/// remaining freedom goes into the first. Throws InvalidInput for non-rotations.
[[nodiscard]] EulerTriple rotmat_to_euler(const RotationMatrix& r);
[[nodiscard]] RotationMatrix euler_to_rotmat(const EulerTriple& e);

/// Convenience chain exp-map -> rotation matrix -> Euler triple.
[[nodiscard]] EulerTriple expmap_to_euler(const Vec3& v);

}  // namespace motionar::pose
