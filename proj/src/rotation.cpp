#include "motionar/pose/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "motionar/error.hpp"

namespace motionar::pose {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(const Quaternion& q, const char* where) {
  if (!q.is_finite()) throw InvalidInput(std::string(where) + ": non-finite quaternion");
}

}  // namespace

double Quaternion::norm() const noexcept { return std::sqrt(x * x + y * y + z * z + w * w); }

bool Quaternion::is_finite() const noexcept {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(z) && std::isfinite(w);
}

Quaternion Quaternion::canonical() const noexcept {
  if (w < 0.0) return {-x, -y, -z, -w};
  return *this;
}

double wrap_angle(double radians) noexcept {
  double a = std::remainder(radians, kTwoPi);  // [-pi, pi]
  if (a <= -kPi) a += kTwoPi;
  return a;
}

Quaternion expmap_to_quat(const Vec3& v) {
  if (!v.allFinite()) throw InvalidInput("expmap_to_quat: non-finite exponential map");
  const double theta = v.norm();
  if (theta == 0.0) return Quaternion::identity();
  const double s = std::sin(0.5 * theta) / theta;
  return Quaternion{s * v.x(), s * v.y(), s * v.z(), std::cos(0.5 * theta)}.canonical();
}

Vec3 quat_to_expmap(const Quaternion& q) {
  require_finite(q, "quat_to_expmap");
  const double n = q.norm();
  if (n == 0.0) throw InvalidInput("quat_to_expmap: zero-norm quaternion");
  if (std::abs(n - 1.0) > 1e-6) throw InvalidInput("quat_to_expmap: quaternion is not unit norm");
  const Quaternion c = q.canonical();
  const Vec3 axis = c.vec();
  const double s = axis.norm();
  if (s == 0.0) return Vec3::Zero();
  // atan2 keeps precision near both theta = 0 and theta = pi.
  const double theta = 2.0 * std::atan2(s, c.w);
  return (theta / s) * axis;
}

Vec3 canonicalize_expmap(const Vec3& v) {
  if (!v.allFinite()) throw InvalidInput("canonicalize_expmap: non-finite exponential map");
  const double theta = v.norm();
  if (theta == 0.0) return Vec3::Zero();
  const Vec3 axis = v / theta;
  double reduced = std::fmod(theta, kTwoPi);
  if (reduced > kPi) return -(kTwoPi - reduced) * axis;
  return reduced * axis;
}

Quaternion quat_multiply(const Quaternion& a, const Quaternion& b) {
  require_finite(a, "quat_multiply");
  require_finite(b, "quat_multiply");
  const Vec3 v1 = a.vec();
  const Vec3 v2 = b.vec();
  const Vec3 v = a.w * v2 + b.w * v1 + v1.cross(v2);
  return {v.x(), v.y(), v.z(), a.w * b.w - v1.dot(v2)};
}

Quaternion quat_conjugate(const Quaternion& q) noexcept { return {-q.x, -q.y, -q.z, q.w}; }

Vec3 quat_rotate_vector(const Quaternion& q, const Vec3& x) {
  const Quaternion p{x.x(), x.y(), x.z(), 0.0};
  return (q * p * quat_conjugate(q)).vec();
}

RotationMatrix quat_to_rotmat(const Quaternion& q) {
  require_finite(q, "quat_to_rotmat");
  const double n2 = q.x * q.x + q.y * q.y + q.z * q.z + q.w * q.w;
  if (n2 == 0.0) throw InvalidInput("quat_to_rotmat: zero-norm quaternion");
  const double s = 2.0 / n2;
  const double xx = q.x * q.x * s, yy = q.y * q.y * s, zz = q.z * q.z * s;
  const double xy = q.x * q.y * s, xz = q.x * q.z * s, yz = q.y * q.z * s;
  const double wx = q.w * q.x * s, wy = q.w * q.y * s, wz = q.w * q.z * s;
  RotationMatrix r;
  r << 1.0 - (yy + zz), xy - wz, xz + wy,
       xy + wz, 1.0 - (xx + zz), yz - wx,
       xz - wy, yz + wx, 1.0 - (xx + yy);
  return r;
}

Quaternion rotmat_to_quat(const RotationMatrix& r) {
  if (!is_rotation(r, 1e-6)) throw InvalidInput("rotmat_to_quat: matrix is not a rotation");
  // Shepperd: branch on the largest of the four squared components.
  const double trace = r.trace();
  Quaternion q;
  if (trace >= r(0, 0) && trace >= r(1, 1) && trace >= r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + trace);
    q = {(r(2, 1) - r(1, 2)) / s, (r(0, 2) - r(2, 0)) / s, (r(1, 0) - r(0, 1)) / s, 0.25 * s};
  } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2));
    q = {0.25 * s, (r(0, 1) + r(1, 0)) / s, (r(0, 2) + r(2, 0)) / s, (r(2, 1) - r(1, 2)) / s};
  } else if (r(1, 1) >= r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2));
    q = {(r(0, 1) + r(1, 0)) / s, 0.25 * s, (r(1, 2) + r(2, 1)) / s, (r(0, 2) - r(2, 0)) / s};
  } else {
    const double s = 2.0 * std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1));
    q = {(r(0, 2) + r(2, 0)) / s, (r(1, 2) + r(2, 1)) / s, 0.25 * s, (r(1, 0) - r(0, 1)) / s};
  }
  const double n = q.norm();
  return Quaternion{q.x / n, q.y / n, q.z / n, q.w / n}.canonical();
}

bool is_rotation(const RotationMatrix& r, double tolerance) noexcept {
  if (!r.allFinite()) return false;
  const double ortho = (r.transpose() * r - RotationMatrix::Identity()).cwiseAbs().maxCoeff();
  return ortho <= tolerance && std::abs(r.determinant() - 1.0) <= tolerance;
}

// R = Rz(a) Rx(b) Ry(c):
//   [ ca cc - sa sb sc   -sa cb   ca sc + sa sb cc ]
//   [ sa cc + ca sb sc    ca cb   sa sc - ca sb cc ]
//   [ -cb sc              sb      cb cc            ]
EulerTriple rotmat_to_euler(const RotationMatrix& r) {
  if (!is_rotation(r)) throw InvalidInput("rotmat_to_euler: matrix is not orthonormal with det +1");
  const double cb = std::hypot(r(2, 0), r(2, 2));
  const double b = std::atan2(r(2, 1), cb);
  double a = 0.0;
  double c = 0.0;
  if (cb > 1e-12) {
    a = std::atan2(-r(0, 1), r(1, 1));
    c = std::atan2(-r(2, 0), r(2, 2));
  } else {
    // Gimbal lock: with c = 0 the upper-left block reduces to Rz(a) columns.
    a = std::atan2(r(1, 0), r(0, 0));
  }
  return {wrap_angle(a), wrap_angle(b), wrap_angle(c)};
}

RotationMatrix euler_to_rotmat(const EulerTriple& e) {
  if (!std::isfinite(e.first) || !std::isfinite(e.second) || !std::isfinite(e.third)) {
    throw InvalidInput("euler_to_rotmat: non-finite angle");
  }
  const Eigen::AngleAxisd rz(e.first, Vec3::UnitZ());
  const Eigen::AngleAxisd rx(e.second, Vec3::UnitX());
  const Eigen::AngleAxisd ry(e.third, Vec3::UnitY());
  return (rz * rx * ry).toRotationMatrix();
}

EulerTriple expmap_to_euler(const Vec3& v) { return rotmat_to_euler(quat_to_rotmat(expmap_to_quat(v))); }

}  // namespace motionar::pose
