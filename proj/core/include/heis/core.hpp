#pragma once

// Group structure, left-invariant frame, metric and connection of the
// three-dimensional Heisenberg group.
//
// Points are (x, y, z) with (x + iy) the horizontal part and z the center
// coordinate. The product is
//
//   (x, y, z) * (x', y', z') = (x + x', y + y', z + z' + x y' - y x').
//
// The correction term is Im<w, w'> for w = x + iy with the Hermitian product
// conjugate-linear in its first slot: Im(conj(w) w') = x y' - y x'. Expanding
// the translations along each coordinate axis gives
//   (x, y, z) * (s, 0, 0) = (x + s, y, z - s y)
//   (x, y, z) * (0, s, 0) = (x, y + s, z + s x)
// and the commutator [(1,0,0), (0,1,0)] = (0, 0, 2). The opposite convention
// flips the sign of both, so this is the only choice consistent with the
// frame X = (1, 0, -y), Y = (0, 1, x), T = (0, 0, 1).

#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace heis {

struct HeisPoint {
  double x{0.0};
  double y{0.0};
  double z{0.0};

  friend bool operator==(const HeisPoint&, const HeisPoint&) = default;

  [[nodiscard]] bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
  [[nodiscard]] Eigen::Vector3d vec() const { return {x, y, z}; }
  static HeisPoint from(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }
};

/// Tangent vector in the left-invariant orthonormal frame {X, Y, T}.
struct FrameVector {
  double a{0.0};  // X
  double b{0.0};  // Y
  double c{0.0};  // T

  friend bool operator==(const FrameVector&, const FrameVector&) = default;

  friend FrameVector operator+(FrameVector l, const FrameVector& r) {
    return {l.a + r.a, l.b + r.b, l.c + r.c};
  }
  friend FrameVector operator-(FrameVector l, const FrameVector& r) {
    return {l.a - r.a, l.b - r.b, l.c - r.c};
  }
  friend FrameVector operator*(double k, const FrameVector& v) {
    return {k * v.a, k * v.b, k * v.c};
  }
  friend FrameVector operator-(const FrameVector& v) { return {-v.a, -v.b, -v.c}; }

  /// Frame coefficients are orthonormal, so this is the Riemannian inner product.
  [[nodiscard]] double dot(const FrameVector& o) const { return a * o.a + b * o.b + c * o.c; }
  [[nodiscard]] double norm() const { return std::sqrt(dot(*this)); }
  [[nodiscard]] bool finite() const {
    return std::isfinite(a) && std::isfinite(b) && std::isfinite(c);
  }
  [[nodiscard]] Eigen::Vector3d vec() const { return {a, b, c}; }
};

/// Tangent vector in the coordinate basis {d/dx, d/dy, d/dz}.
struct CoordVector {
  double u{0.0};
  double v{0.0};
  double w{0.0};

  friend bool operator==(const CoordVector&, const CoordVector&) = default;

  [[nodiscard]] bool finite() const {
    return std::isfinite(u) && std::isfinite(v) && std::isfinite(w);
  }
  [[nodiscard]] Eigen::Vector3d vec() const { return {u, v, w}; }
  static CoordVector from(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }
};

/// Names the members of the frame. External interfaces use X/Y/T; the
/// underlying values are 0-based slots.
enum class FrameIndex : int { X = 0, Y = 1, T = 2 };

/// Converts a 1-based index (1:X, 2:Y, 3:T). Throws std::out_of_range.
FrameIndex frame_index(int one_based);
const char* frame_name(FrameIndex i);

inline constexpr std::array<FrameIndex, 3> kFrame{FrameIndex::X, FrameIndex::Y, FrameIndex::T};

/// Symmetric positive-definite 3x3 matrix in coordinates (x, y, z).
class MetricTensor {
 public:
  /// Builds the tensor from the upper triangle; the lower triangle mirrors it.
  MetricTensor(double gxx, double gxy, double gxz, double gyy, double gyz, double gzz);

  [[nodiscard]] double operator()(int i, int j) const { return m_(i, j); }
  [[nodiscard]] const Eigen::Matrix3d& matrix() const { return m_; }
  [[nodiscard]] double determinant() const { return m_.determinant(); }
  [[nodiscard]] std::array<double, 3> leading_minors() const;

 private:
  Eigen::Matrix3d m_;
};

using ConnectionTable = std::array<std::array<FrameVector, 3>, 3>;

// Group algebra.
HeisPoint group_mul(const HeisPoint& p, const HeisPoint& q);
HeisPoint group_inv(const HeisPoint& p);
HeisPoint commutator(const HeisPoint& p, const HeisPoint& q);

/// Jacobian of q -> g * q; constant in q.
Eigen::Matrix3d left_translation_jacobian(const HeisPoint& g);
CoordVector push_forward(const HeisPoint& g, const CoordVector& v);

/// Anisotropic dilation (x, y, z) -> (lambda x, lambda y, lambda^2 z); a group automorphism.
HeisPoint dilate(const HeisPoint& p, double lambda);

// Frame and metric.
struct Frame {
  CoordVector X;
  CoordVector Y;
  CoordVector T;
};

Frame frame_at(const HeisPoint& p);
MetricTensor metric_at(const HeisPoint& p);

CoordVector frame_to_coord(const HeisPoint& p, const FrameVector& v);
FrameVector coord_to_frame(const HeisPoint& p, const CoordVector& v);

double inner_product(const HeisPoint& p, const CoordVector& u, const CoordVector& v);

// Levi-Civita connection on frame fields. All values are constant.

/// nabla_{E_i} E_j.
FrameVector nabla(FrameIndex i, FrameIndex j);
const ConnectionTable& connection_table();

/// Covariant derivative of the constant-coefficient field `field` along `direction`.
FrameVector covariant(const FrameVector& direction, const FrameVector& field);

/// Lie bracket [E_i, E_j], evaluated from the coordinate expressions of the frame.
FrameVector frame_bracket(FrameIndex i, FrameIndex j);

/// R(E_i, E_j) E_k = nabla_i nabla_j E_k - nabla_j nabla_i E_k - nabla_[E_i,E_j] E_k.
FrameVector curvature_frame(FrameIndex i, FrameIndex j, FrameIndex k);

/// <R(E_i, E_j) E_j, E_i>. Throws std::invalid_argument when i == j.
double sectional_curvature(FrameIndex i, FrameIndex j);

}  // namespace heis
