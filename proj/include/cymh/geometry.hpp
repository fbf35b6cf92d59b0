#pragma once

// Background geometry: four charts on (pieces of) the conformal family
//
//   MinkCart  (t, x, y, z)       eta = dt^2 - dx^2 - dy^2 - dz^2
//   MinkSph   (t, r, theta, phi) eta in spherical spatial coordinates
//   Cylinder  (tau, zeta, theta, phi)  e = dtau^2 - dzeta^2 - sin^2(zeta) s2
//   DeSitter  (alpha, zeta, theta, phi)  g = dalpha^2 - cosh^2(alpha) s3
//
// Minkowski embeds conformally in the cylinder, e = Omega^2 eta with
// Omega = cos(tau) + cos(zeta); de Sitter covers the band |tau| < pi/2
// through tau = gd(alpha), e = omega^2 g with omega = sech(alpha) = cos(tau).
//
// Curvature convention: the sign is fixed so the closed spatial slices carry
// positive scalar curvature (cylinder R = 6, de Sitter R = 12); this is the
// negative of the contraction of d Gamma - d Gamma + Gamma Gamma - Gamma Gamma.

#include <cmath>
#include <utility>

#include "cymh/algebra.hpp"

namespace cymh {

enum class Chart { MinkCart, MinkSph, Cylinder, DeSitter };

struct Vec4 {
  double x[4]{};

  constexpr Vec4() = default;
  constexpr Vec4(double a, double b, double c, double d) : x{a, b, c, d} {}

  double& operator[](int i) { return x[i]; }
  double operator[](int i) const { return x[i]; }

  Vec4& operator+=(const Vec4& o) {
    for (int i = 0; i < 4; ++i) x[i] += o.x[i];
    return *this;
  }
  Vec4& operator-=(const Vec4& o) {
    for (int i = 0; i < 4; ++i) x[i] -= o.x[i];
    return *this;
  }
  Vec4& operator*=(double s) {
    for (int i = 0; i < 4; ++i) x[i] *= s;
    return *this;
  }
};

inline Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
inline Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
inline Vec4 operator*(double s, Vec4 a) { return a *= s; }

struct Mat4 {
  double a[4][4]{};

  static Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m.a[i][i] = 1.0;
    return m;
  }

  double* operator[](int i) { return a[i]; }
  const double* operator[](int i) const { return a[i]; }
};

inline Vec4 operator*(const Mat4& m, const Vec4& v) {
  Vec4 r;
  for (int i = 0; i < 4; ++i) {
    double s = 0.0;
    for (int j = 0; j < 4; ++j) s += m.a[i][j] * v.x[j];
    r.x[i] = s;
  }
  return r;
}

inline Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 c;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += a.a[i][k] * b.a[k][j];
      c.a[i][j] = s;
    }
  return c;
}

inline Mat4 transpose(const Mat4& m) {
  Mat4 t;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t.a[i][j] = m.a[j][i];
  return t;
}

inline double max_abs_diff(const Mat4& a, const Mat4& b) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(a.a[i][j] - b.a[i][j]));
  return m;
}

// Gauss-Jordan inverse; metrics here are diagonal but test jacobians are not.
inline Mat4 inverse(Mat4 m) {
  Mat4 inv = Mat4::identity();
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(m.a[r][col]) > std::abs(m.a[piv][col])) piv = r;
    for (int j = 0; j < 4; ++j) {
      std::swap(m.a[col][j], m.a[piv][j]);
      std::swap(inv.a[col][j], inv.a[piv][j]);
    }
    double d = m.a[col][col];
    for (int j = 0; j < 4; ++j) {
      m.a[col][j] /= d;
      inv.a[col][j] /= d;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      double f = m.a[r][col];
      for (int j = 0; j < 4; ++j) {
        m.a[r][j] -= f * m.a[col][j];
        inv.a[r][j] -= f * inv.a[col][j];
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Metrics

inline Mat4 metric(Chart c, const Vec4& p) {
  Mat4 g;
  double st;
  switch (c) {
    case Chart::MinkCart:
      g[0][0] = 1.0;
      g[1][1] = g[2][2] = g[3][3] = -1.0;
      break;
    case Chart::MinkSph: {
      double r = p[1];
      st = std::sin(p[2]);
      g[0][0] = 1.0;
      g[1][1] = -1.0;
      g[2][2] = -r * r;
      g[3][3] = -r * r * st * st;
      break;
    }
    case Chart::Cylinder: {
      double sz = std::sin(p[1]);
      st = std::sin(p[2]);
      g[0][0] = 1.0;
      g[1][1] = -1.0;
      g[2][2] = -sz * sz;
      g[3][3] = -sz * sz * st * st;
      break;
    }
    case Chart::DeSitter: {
      double ch = std::cosh(p[0]);
      double sz = std::sin(p[1]);
      st = std::sin(p[2]);
      g[0][0] = 1.0;
      g[1][1] = -ch * ch;
      g[2][2] = -ch * ch * sz * sz;
      g[3][3] = -ch * ch * sz * sz * st * st;
      break;
    }
  }
  return g;
}

inline Mat4 inverse_metric(Chart c, const Vec4& p) {
  Mat4 g = metric(c, p), gi;
  for (int i = 0; i < 4; ++i) gi[i][i] = 1.0 / g[i][i];
  return gi;
}

// Riemannian metric of the constant-time leaf times the lapse block:
// Gamma_ab = 2 T_a T_b - g_ab with T the unit normal one-form (dx^0).
inline Mat4 gamma_metric(Chart c, const Vec4& p) {
  Mat4 g = metric(c, p);
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = -g[i][j];
  out[0][0] += 2.0;
  return out;
}

inline Mat4 gamma_inverse(Chart c, const Vec4& p) {
  Mat4 g = gamma_metric(c, p), gi;
  for (int i = 0; i < 4; ++i) gi[i][i] = 1.0 / g[i][i];
  return gi;
}

// sqrt(det) of the induced metric on a constant-time slice.
inline double spatial_volume_density(Chart c, const Vec4& p) {
  switch (c) {
    case Chart::MinkCart:
      return 1.0;
    case Chart::MinkSph:
      return p[1] * p[1] * std::sin(p[2]);
    case Chart::Cylinder: {
      double sz = std::sin(p[1]);
      return sz * sz * std::sin(p[2]);
    }
    case Chart::DeSitter: {
      double ch = std::cosh(p[0]);
      double sz = std::sin(p[1]);
      return ch * ch * ch * sz * sz * std::sin(p[2]);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Connection coefficients, G[a][b][c] = Gamma^a_{bc}

struct Christoffel {
  double g[4][4][4]{};
};

inline Christoffel christoffels(Chart c, const Vec4& p) {
  Christoffel G;
  auto set = [&](int a, int b, int d, double v) {
    G.g[a][b][d] = v;
    G.g[a][d][b] = v;
  };
  double st = std::sin(p[2]), ct = std::cos(p[2]);
  switch (c) {
    case Chart::MinkCart:
      break;
    case Chart::MinkSph: {
      double r = p[1];
      set(1, 2, 2, -r);
      set(1, 3, 3, -r * st * st);
      set(2, 1, 2, 1.0 / r);
      set(2, 3, 3, -st * ct);
      set(3, 1, 3, 1.0 / r);
      set(3, 2, 3, ct / st);
      break;
    }
    case Chart::Cylinder: {
      double sz = std::sin(p[1]), cz = std::cos(p[1]);
      set(1, 2, 2, -sz * cz);
      set(1, 3, 3, -sz * cz * st * st);
      set(2, 1, 2, cz / sz);
      set(2, 3, 3, -st * ct);
      set(3, 1, 3, cz / sz);
      set(3, 2, 3, ct / st);
      break;
    }
    case Chart::DeSitter: {
      double ch = std::cosh(p[0]), sh = std::sinh(p[0]);
      double sz = std::sin(p[1]), cz = std::cos(p[1]);
      set(0, 1, 1, ch * sh);
      set(0, 2, 2, ch * sh * sz * sz);
      set(0, 3, 3, ch * sh * sz * sz * st * st);
      set(1, 0, 1, sh / ch);
      set(2, 0, 2, sh / ch);
      set(3, 0, 3, sh / ch);
      set(1, 2, 2, -sz * cz);
      set(1, 3, 3, -sz * cz * st * st);
      set(2, 1, 2, cz / sz);
      set(2, 3, 3, -st * ct);
      set(3, 1, 3, cz / sz);
      set(3, 2, 3, ct / st);
      break;
    }
  }
  return G;
}

// ---------------------------------------------------------------------------
// Curvature (sign convention in the header comment)

inline double scalar_curvature(Chart c) {
  switch (c) {
    case Chart::MinkCart:
    case Chart::MinkSph:
      return 0.0;
    case Chart::Cylinder:
      return 6.0;
    case Chart::DeSitter:
      return 12.0;
  }
  return 0.0;
}

inline Mat4 ricci(Chart c, const Vec4& p) {
  Mat4 r;
  switch (c) {
    case Chart::MinkCart:
    case Chart::MinkSph:
      break;
    case Chart::Cylinder: {
      // 2 e_ab - 2 T_a T_b: vanishing time-time part, 2 e_ij spatially.
      Mat4 g = metric(c, p);
      for (int i = 0; i < 4; ++i) r[i][i] = 2.0 * g[i][i];
      r[0][0] -= 2.0;
      break;
    }
    case Chart::DeSitter: {
      Mat4 g = metric(c, p);
      for (int i = 0; i < 4; ++i) r[i][i] = 3.0 * g[i][i];
      break;
    }
  }
  return r;
}

// R/6, the conformal wave operator's mass coefficient.
inline double conformal_mass(Chart c) { return scalar_curvature(c) / 6.0; }

// ---------------------------------------------------------------------------
// Chart maps

// Null coordinates u = t - r, v = t + r and the compactifying angles
// tau = arctan(u) + arctan(v), zeta = arctan(v) - arctan(u).

struct CylCoords {
  double tau, zeta;
};

inline CylCoords cyl_from_mink(double t, double r) {
  double au = std::atan(t - r), av = std::atan(t + r);
  return {av + au, av - au};
}

inline std::pair<double, double> mink_from_cyl(double tau, double zeta) {
  double u = std::tan(0.5 * (tau - zeta));
  double v = std::tan(0.5 * (tau + zeta));
  return {0.5 * (u + v), 0.5 * (v - u)};
}

inline double omega_mink(double t, double r) {
  double u = t - r, v = t + r;
  return 2.0 / std::sqrt((1.0 + u * u) * (1.0 + v * v));
}

inline double omega_cyl(double tau, double zeta) {
  return std::cos(tau) + std::cos(zeta);
}

// First derivatives of the map: P = dtau/dt = dzeta/dr, Q = dtau/dr = dzeta/dt.
struct MapDeriv {
  double P, Q;
};

inline MapDeriv cyl_map_deriv(double t, double r) {
  double u = t - r, v = t + r;
  double iu = 1.0 / (1.0 + u * u), iv = 1.0 / (1.0 + v * v);
  return {iu + iv, iv - iu};
}

// Jacobian d(tau,zeta,theta,phi)/d(t,r,theta,phi) as a matrix, rows hatted.
inline Mat4 cyl_jacobian(double t, double r) {
  MapDeriv d = cyl_map_deriv(t, r);
  Mat4 j;
  j[0][0] = d.P;
  j[0][1] = d.Q;
  j[1][0] = d.Q;
  j[1][1] = d.P;
  j[2][2] = 1.0;
  j[3][3] = 1.0;
  return j;
}

// Lower-index gradient of log(Omega) in Minkowski spherical components.
inline Vec4 upsilon_mink(double t, double r) {
  double u = t - r, v = t + r;
  double gu = u / (1.0 + u * u), gv = v / (1.0 + v * v);
  return {-gu - gv, gu - gv, 0.0, 0.0};
}

// r+^2 = (1 + r^2)/2; at t = 0, Omega = 1/r+^2 and sin(zeta) = Omega r.
inline double rplus_sq(double r) { return 0.5 * (1.0 + r * r); }

// de Sitter time against cylinder time, tau = gd(alpha).
inline double gudermann(double a) { return 2.0 * std::atan(std::tanh(0.5 * a)); }
inline double inverse_gudermann(double tau) { return std::asinh(std::tan(tau)); }
inline double ds_conformal(double a) { return 1.0 / std::cosh(a); }

// ---------------------------------------------------------------------------
// Null frames (spherical charts only): l = -d_t + d_r, n = d_t + d_r,
// unit angular legs.  Components are contravariant.

struct NullFrame {
  Vec4 l, n, eth, eph;
};

inline NullFrame null_frame(Chart c, const Vec4& p) {
  double rho = (c == Chart::MinkSph) ? p[1] : std::sin(p[1]);
  double st = std::sin(p[2]);
  NullFrame f;
  f.l = {-1.0, 1.0, 0.0, 0.0};
  f.n = {1.0, 1.0, 0.0, 0.0};
  f.eth = {0.0, 0.0, 1.0 / rho, 0.0};
  f.eph = {0.0, 0.0, 0.0, 1.0 / (rho * st)};
  return f;
}

}  // namespace cymh
