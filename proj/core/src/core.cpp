#include "heis/core.hpp"

#include <string>

namespace heis {

namespace {

int slot(FrameIndex i) {
  const int s = static_cast<int>(i);
  if (s < 0 || s > 2) {
    throw std::out_of_range("frame index out of range: " + std::to_string(s));
  }
  return s;
}

FrameVector unit(int s) {
  FrameVector v;
  (s == 0 ? v.a : s == 1 ? v.b : v.c) = 1.0;
  return v;
}

double component(const FrameVector& v, int s) { return s == 0 ? v.a : s == 1 ? v.b : v.c; }

// Coordinate expression of the frame fields and their (constant) Jacobians,
// J[k][i] = d_i E^k.
Eigen::Vector3d field_at(int s, const HeisPoint& p) {
  switch (s) {
    case 0: return {1.0, 0.0, -p.y};
    case 1: return {0.0, 1.0, p.x};
    default: return {0.0, 0.0, 1.0};
  }
}

Eigen::Matrix3d field_jacobian(int s) {
  Eigen::Matrix3d j = Eigen::Matrix3d::Zero();
  if (s == 0) j(2, 1) = -1.0;
  if (s == 1) j(2, 0) = 1.0;
  return j;
}

ConnectionTable make_connection_table() {
  const FrameVector X{1, 0, 0}, Y{0, 1, 0}, T{0, 0, 1}, O{};
  // Row i, column j holds nabla_{E_i} E_j.
  return {{
      {O, T, -Y},
      {-T, O, X},
      {-Y, X, O},
  }};
}

}  // namespace

FrameIndex frame_index(int one_based) {
  if (one_based < 1 || one_based > 3) {
    throw std::out_of_range("frame index must be 1 (X), 2 (Y) or 3 (T), got " +
                            std::to_string(one_based));
  }
  return static_cast<FrameIndex>(one_based - 1);
}

const char* frame_name(FrameIndex i) {
  static constexpr const char* names[] = {"X", "Y", "T"};
  return names[slot(i)];
}

MetricTensor::MetricTensor(double gxx, double gxy, double gxz, double gyy, double gyz,
                           double gzz) {
  m_ << gxx, gxy, gxz,
        gxy, gyy, gyz,
        gxz, gyz, gzz;
}

std::array<double, 3> MetricTensor::leading_minors() const {
  return {m_(0, 0), m_(0, 0) * m_(1, 1) - m_(0, 1) * m_(1, 0), m_.determinant()};
}

HeisPoint group_mul(const HeisPoint& p, const HeisPoint& q) {
  return {p.x + q.x, p.y + q.y, p.z + q.z + p.x * q.y - p.y * q.x};
}

HeisPoint group_inv(const HeisPoint& p) { return {-p.x, -p.y, -p.z}; }

HeisPoint commutator(const HeisPoint& p, const HeisPoint& q) {
  return group_mul(group_mul(group_mul(p, q), group_inv(p)), group_inv(q));
}

Eigen::Matrix3d left_translation_jacobian(const HeisPoint& g) {
  Eigen::Matrix3d j;
  j << 1.0, 0.0, 0.0,
       0.0, 1.0, 0.0,
       -g.y, g.x, 1.0;
  return j;
}

CoordVector push_forward(const HeisPoint& g, const CoordVector& v) {
  return {v.u, v.v, v.w - g.y * v.u + g.x * v.v};
}

HeisPoint dilate(const HeisPoint& p, double lambda) {
  return {lambda * p.x, lambda * p.y, lambda * lambda * p.z};
}

Frame frame_at(const HeisPoint& p) {
  return {CoordVector{1.0, 0.0, -p.y}, CoordVector{0.0, 1.0, p.x}, CoordVector{0.0, 0.0, 1.0}};
}

MetricTensor metric_at(const HeisPoint& p) {
  const double x = p.x, y = p.y;
  return MetricTensor(1.0 + y * y, -x * y, y,
                      1.0 + x * x, -x,
                      1.0);
}

CoordVector frame_to_coord(const HeisPoint& p, const FrameVector& v) {
  return {v.a, v.b, v.c - v.a * p.y + v.b * p.x};
}

FrameVector coord_to_frame(const HeisPoint& p, const CoordVector& v) {
  // d/dx = X + yT, d/dy = Y - xT, d/dz = T.
  return {v.u, v.v, v.w + v.u * p.y - v.v * p.x};
}

double inner_product(const HeisPoint& p, const CoordVector& u, const CoordVector& v) {
  return u.vec().dot(metric_at(p).matrix() * v.vec());
}

const ConnectionTable& connection_table() {
  static const ConnectionTable table = make_connection_table();
  return table;
}

FrameVector nabla(FrameIndex i, FrameIndex j) {
  return connection_table()[slot(i)][slot(j)];
}

FrameVector covariant(const FrameVector& direction, const FrameVector& field) {
  const auto& table = connection_table();
  FrameVector out;
  for (int i = 0; i < 3; ++i) {
    for (int m = 0; m < 3; ++m) {
      const double k = component(direction, i) * component(field, m);
      if (k != 0.0) out = out + k * table[i][m];
    }
  }
  return out;
}

FrameVector frame_bracket(FrameIndex i, FrameIndex j) {
  const int si = slot(i), sj = slot(j);
  // The frame fields are affine in (x, y); the bracket is the same at every
  // point, so evaluate it at the identity.
  const HeisPoint at{};
  const Eigen::Vector3d v = field_at(si, at), w = field_at(sj, at);
  const Eigen::Vector3d bracket = field_jacobian(sj) * v - field_jacobian(si) * w;
  return coord_to_frame(at, CoordVector::from(bracket));
}

FrameVector curvature_frame(FrameIndex i, FrameIndex j, FrameIndex k) {
  const FrameVector ei = unit(slot(i)), ej = unit(slot(j)), ek = unit(slot(k));
  return covariant(ei, covariant(ej, ek)) - covariant(ej, covariant(ei, ek)) -
         covariant(frame_bracket(i, j), ek);
}

double sectional_curvature(FrameIndex i, FrameIndex j) {
  if (slot(i) == slot(j)) {
    throw std::invalid_argument("sectional curvature needs two distinct frame directions");
  }
  return curvature_frame(i, j, j).dot(unit(slot(i)));
}

}  // namespace heis
