#pragma once

// su(2)-valued quantities in the orthonormal basis theta_a = L_a/sqrt(2),
// (L_a)_{jk} = -eps_{ajk}.  In this basis <theta_a, theta_b> = delta_{ab}
// and [theta_a, theta_b] = eps_{abc} theta_c / sqrt(2), so an adjoint value
// is stored as its coefficient triple and the bracket is a scaled cross
// product.  Group elements act on coefficient triples as plain rotations.

#include <array>
#include <cmath>

namespace cymh {

inline constexpr double kSqrt2 = 1.4142135623730951;
inline constexpr double kInvSqrt2 = 0.7071067811865476;
inline constexpr double kPi = 3.14159265358979323846;

struct Vec3 {
  double x[3]{0.0, 0.0, 0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double a, double b, double c) : x{a, b, c} {}

  double& operator[](int i) { return x[i]; }
  double operator[](int i) const { return x[i]; }

  Vec3& operator+=(const Vec3& o) {
    x[0] += o.x[0]; x[1] += o.x[1]; x[2] += o.x[2];
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x[0] -= o.x[0]; x[1] -= o.x[1]; x[2] -= o.x[2];
    return *this;
  }
  Vec3& operator*=(double s) {
    x[0] *= s; x[1] *= s; x[2] *= s;
    return *this;
  }
};

using Lie = Vec3;

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }
inline Vec3 operator-(const Vec3& a) { return {-a.x[0], -a.x[1], -a.x[2]}; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x[0] * b.x[0] + a.x[1] * b.x[1] + a.x[2] * b.x[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.x[1] * b.x[2] - a.x[2] * b.x[1],
          a.x[2] * b.x[0] - a.x[0] * b.x[2],
          a.x[0] * b.x[1] - a.x[1] * b.x[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Killing-induced inner product, equals the coefficient dot product.
inline double inner(const Lie& a, const Lie& b) { return dot(a, b); }

// [X, Y] in the theta basis.
inline Lie bracket(const Lie& a, const Lie& b) { return kInvSqrt2 * cross(a, b); }

// f_{abc} = eps_{abc}/sqrt(2).
inline double structure_constant(int a, int b, int c) {
  int eps = (b - a) * (c - b) * (c - a);
  if (eps == 2 || eps == -1) return kInvSqrt2;    // even permutations
  if (eps == -2 || eps == 1) return -kInvSqrt2;   // odd permutations
  return 0.0;
}

struct Mat3 {
  double a[3][3]{};

  static Mat3 identity() {
    Mat3 m;
    m.a[0][0] = m.a[1][1] = m.a[2][2] = 1.0;
    return m;
  }

  double* operator[](int i) { return a[i]; }
  const double* operator[](int i) const { return a[i]; }

  Mat3& operator+=(const Mat3& o) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] += o.a[i][j];
    return *this;
  }
  Mat3& operator*=(double s) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] *= s;
    return *this;
  }
};

inline Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
inline Mat3 operator*(double s, Mat3 a) { return a *= s; }

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a.a[i][k] * b.a[k][j];
      c.a[i][j] = s;
    }
  return c;
}

inline Vec3 operator*(const Mat3& m, const Vec3& v) {
  Vec3 r;
  for (int i = 0; i < 3; ++i)
    r.x[i] = m.a[i][0] * v.x[0] + m.a[i][1] * v.x[1] + m.a[i][2] * v.x[2];
  return r;
}

inline Mat3 transpose(const Mat3& m) {
  Mat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.a[i][j] = m.a[j][i];
  return t;
}

inline double det(const Mat3& m) {
  return m.a[0][0] * (m.a[1][1] * m.a[2][2] - m.a[1][2] * m.a[2][1]) -
         m.a[0][1] * (m.a[1][0] * m.a[2][2] - m.a[1][2] * m.a[2][0]) +
         m.a[0][2] * (m.a[1][0] * m.a[2][1] - m.a[1][1] * m.a[2][0]);
}

inline double max_abs_diff(const Mat3& a, const Mat3& b) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(a.a[i][j] - b.a[i][j]));
  return m;
}

// Matrix of the adjoint value X, i.e. X^a theta_a as a 3x3 matrix.  Equals
// the cross-product matrix of the coefficient triple scaled by 1/sqrt(2).
inline Mat3 lie_matrix(const Lie& X) {
  Mat3 m;
  m.a[0][1] = -X.x[2]; m.a[0][2] =  X.x[1];
  m.a[1][0] =  X.x[2]; m.a[1][2] = -X.x[0];
  m.a[2][0] = -X.x[1]; m.a[2][1] =  X.x[0];
  return kInvSqrt2 * m;
}

// Coefficients of an antisymmetric matrix in the theta basis, c_a = -tr(M theta_a).
inline Lie lie_from_matrix(const Mat3& m) {
  return {kInvSqrt2 * (m.a[2][1] - m.a[1][2]),
          kInvSqrt2 * (m.a[0][2] - m.a[2][0]),
          kInvSqrt2 * (m.a[1][0] - m.a[0][1])};
}

// exp(u^a theta_a): Rodrigues rotation by |u|/sqrt(2) about u.
inline Mat3 group_exp(const Lie& u) {
  double n = norm(u);
  double ang = n * kInvSqrt2;
  Mat3 r = Mat3::identity();
  if (n < 1e-300) return r;
  Vec3 axis = (1.0 / n) * u;
  Mat3 k;  // cross-product matrix of the unit axis
  k.a[0][1] = -axis.x[2]; k.a[0][2] =  axis.x[1];
  k.a[1][0] =  axis.x[2]; k.a[1][2] = -axis.x[0];
  k.a[2][0] = -axis.x[1]; k.a[2][1] =  axis.x[0];
  r += std::sin(ang) * k;
  r += (1.0 - std::cos(ang)) * (k * k);
  return r;
}

// Ad_U X; in the theta basis this is the rotation U applied to the triple.
inline Lie adjoint_act(const Mat3& U, const Lie& X) { return U * X; }

inline bool is_rotation(const Mat3& m, double tol = 1e-12) {
  Mat3 g = transpose(m) * m;
  if (max_abs_diff(g, Mat3::identity()) > tol) return false;
  return std::abs(det(m) - 1.0) <= tol;
}

}  // namespace cymh
