#pragma once

// Pointwise field content of the two equivariant families and the maps
// between conformal frames.
//
// Hedgehog (spherical charts, temporal gauge, W = 1 - w, s = 1/sqrt(2),
// g(W) = 2W - s W^2, rho the area-radius coordinate r or zeta):
//   A_theta = W mu_theta          mu_theta = d_theta(nhat) x nhat = -v
//   A_phi   = W mu_phi            mu_phi   = d_phi(nhat) x nhat = sin(theta) u
//   F_{t theta} = -w_t mu_theta   F_{r theta} = -w' mu_theta   (same for phi leg)
//   F_{theta phi} = -sin(theta) g(W) nhat
//   phi = h nhat,  Dphi = (h_t, h', h(1-sW) u, h(1-sW) sin(theta) v)
// The triple (u, v, nhat) is the orthonormal frame attached to the angular
// direction, reused as a Lie triple through the basis isomorphism.
//
// FixedDirection: A = F = 0, phi = c(t, rho) theta_3, Dphi = dc.
//
// The same component formulas serve the flat and cylinder charts; only the
// metric weights differ.

#include <cmath>

#include "cymh/algebra.hpp"
#include "cymh/geometry.hpp"

namespace cymh {

enum class Ansatz { Hedgehog, FixedDirection };

struct PointFields {
  Chart chart = Chart::MinkSph;
  Vec4 x{};
  Lie A[4]{};
  Lie F[4][4]{};  // both triangles kept in sync
  Lie phi{};
  Lie Dphi[4]{};
};

struct AngularTriad {
  Lie nhat, u, v;
};

inline AngularTriad angular_triad(double theta, double phi) {
  double st = std::sin(theta), ct = std::cos(theta);
  double sp = std::sin(phi), cp = std::cos(phi);
  return {{st * cp, st * sp, ct}, {ct * cp, ct * sp, -st}, {-sp, cp, 0.0}};
}

// Radial data of one ansatz at a single point: values, time derivatives,
// derivatives along rho.
struct ProfilePoint {
  double w = 1.0, pw = 0.0, dw = 0.0;
  double h = 0.0, ph = 0.0, dh = 0.0;
};

inline void set_F(PointFields& f, int a, int b, const Lie& val) {
  f.F[a][b] = val;
  f.F[b][a] = -val;
}

// chart is MinkSph or Cylinder; x[1] is rho.
inline PointFields hedgehog_point(Chart chart, const Vec4& x, const ProfilePoint& p) {
  PointFields f;
  f.chart = chart;
  f.x = x;
  auto [nhat, u, v] = angular_triad(x[2], x[3]);
  double st = std::sin(x[2]);
  double W = 1.0 - p.w;
  double gW = 2.0 * W - kInvSqrt2 * W * W;
  Lie mu_th = -1.0 * v;
  Lie mu_ph = st * u;
  f.A[2] = W * mu_th;
  f.A[3] = W * mu_ph;
  set_F(f, 0, 2, -p.pw * mu_th);
  set_F(f, 0, 3, -p.pw * mu_ph);
  set_F(f, 1, 2, -p.dw * mu_th);
  set_F(f, 1, 3, -p.dw * mu_ph);
  set_F(f, 2, 3, (-st * gW) * nhat);
  f.phi = p.h * nhat;
  f.Dphi[0] = p.ph * nhat;
  f.Dphi[1] = p.dh * nhat;
  double k = p.h * (1.0 - kInvSqrt2 * W);
  f.Dphi[2] = k * u;
  f.Dphi[3] = (k * st) * v;
  return f;
}

// Same family in the flat Cartesian chart; p holds the radial data at
// r = |x_spatial| > 0, with dw, dh radial derivatives.
inline PointFields hedgehog_cart_point(const Vec4& x, const ProfilePoint& p) {
  PointFields f;
  f.chart = Chart::MinkCart;
  f.x = x;
  double r = std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
  Lie xh{x[1] / r, x[2] / r, x[3] / r};
  double W = 1.0 - p.w;
  double gW = 2.0 * W - kInvSqrt2 * W * W;
  double s = kInvSqrt2;
  auto eps_row = [&](int i) {  // (eps_{a i k} xhat_k)_a = column of the hat matrix
    Lie e;
    for (int a = 0; a < 3; ++a) {
      int j = 3 - a - i;  // the remaining index when a != i
      if (a == i) { e[a] = 0.0; continue; }
      // eps_{a i j} with all distinct
      int perm = (i - a + 3) % 3;  // 1 for cyclic (a,i,j), 2 for anti
      e[a] = (perm == 1 ? 1.0 : -1.0) * xh[j];
    }
    return e;
  };
  // A_i^a = eps_{a i k} xhat_k W / r
  Lie arow[3];
  for (int i = 0; i < 3; ++i) arow[i] = eps_row(i);
  for (int i = 0; i < 3; ++i) f.A[1 + i] = (W / r) * arow[i];
  for (int i = 0; i < 3; ++i) set_F(f, 0, 1 + i, (-p.pw / r) * arow[i]);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Lie val;
      int k = 3 - i - j;  // remaining spatial index
      double eijk = ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
      for (int a = 0; a < 3; ++a) {
        double t1 = arow[i][a] * xh[j] - arow[j][a] * xh[i];
        val[a] = (p.dw / r) * t1 - (gW / (r * r)) * eijk * xh[k] * xh[a];
      }
      set_F(f, 1 + i, 1 + j, val);
    }
  f.phi = p.h * xh;
  f.Dphi[0] = p.ph * xh;
  double k1 = p.h * (1.0 - s * W) / r;
  for (int i = 0; i < 3; ++i) {
    Lie d;
    for (int a = 0; a < 3; ++a)
      d[a] = ((i == a ? 1.0 : 0.0) - xh[i] * xh[a]) * k1 + xh[i] * xh[a] * p.dh;
    f.Dphi[1 + i] = d;
  }
  return f;
}

inline PointFields fixed_direction_point(Chart chart, const Vec4& x, double c,
                                         double pc, double dc) {
  PointFields f;
  f.chart = chart;
  f.x = x;
  f.phi = {0.0, 0.0, c};
  f.Dphi[0] = {0.0, 0.0, pc};
  f.Dphi[1] = {0.0, 0.0, dc};
  return f;
}

// ---------------------------------------------------------------------------
// Gauge action

// A'_a = Ad_U A_a - (d_a U) U^{-1}; curvature and matter rotate.
inline PointFields gauge_transform(const PointFields& f, const Mat3& U,
                                   const Mat3 dU[4]) {
  PointFields g = f;
  for (int a = 0; a < 4; ++a)
    g.A[a] = adjoint_act(U, f.A[a]) - lie_from_matrix(dU[a] * transpose(U));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) g.F[a][b] = adjoint_act(U, f.F[a][b]);
  g.phi = adjoint_act(U, f.phi);
  for (int a = 0; a < 4; ++a) g.Dphi[a] = adjoint_act(U, f.Dphi[a]);
  return g;
}

// ---------------------------------------------------------------------------
// Conformal frame maps

// Pull cylinder fields back to the flat spherical chart at (t, r, ., .).
// hat must sit at the image point.
inline PointFields pull_to_mink(const PointFields& hat, double t, double r) {
  PointFields out;
  out.chart = Chart::MinkSph;
  out.x = {t, r, hat.x[2], hat.x[3]};
  Mat4 J = cyl_jacobian(t, r);  // rows hatted, columns flat
  double om = omega_mink(t, r);
  Vec4 ups = upsilon_mink(t, r);
  for (int a = 0; a < 4; ++a) {
    Lie s{};
    for (int b = 0; b < 4; ++b) s += J[b][a] * hat.A[b];
    out.A[a] = s;
  }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Lie s{};
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) s += (J[c][a] * J[d][b]) * hat.F[c][d];
      out.F[a][b] = s;
    }
  out.phi = om * hat.phi;
  for (int a = 0; a < 4; ++a) {
    Lie s = ups[a] * hat.phi;
    for (int b = 0; b < 4; ++b) s += J[b][a] * hat.Dphi[b];
    out.Dphi[a] = om * s;
  }
  return out;
}

// Push cylinder fields onto the de Sitter chart at alpha = gd^{-1}(tau).
inline PointFields cyl_to_ds(const PointFields& hat, double alpha) {
  PointFields out;
  out.chart = Chart::DeSitter;
  out.x = {alpha, hat.x[1], hat.x[2], hat.x[3]};
  double om = ds_conformal(alpha);
  double ups0 = -std::tanh(alpha);  // d_alpha log(omega)
  out.A[0] = om * hat.A[0];
  for (int i = 1; i < 4; ++i) out.A[i] = hat.A[i];
  for (int i = 1; i < 4; ++i) {
    out.F[0][i] = om * hat.F[0][i];
    out.F[i][0] = -1.0 * out.F[0][i];
    for (int j = 1; j < 4; ++j) out.F[i][j] = hat.F[i][j];
  }
  out.phi = om * hat.phi;
  out.Dphi[0] = om * (om * hat.Dphi[0] + ups0 * hat.phi);
  for (int i = 1; i < 4; ++i) out.Dphi[i] = om * hat.Dphi[i];
  return out;
}

// ---------------------------------------------------------------------------
// Pointwise scalars

// |X|^2 in the Riemannian leaf metric, one-forms; both index orders counted
// for the two-form version.
inline double gamma_norm2_oneform(const PointFields& f) {
  Mat4 Gi = gamma_inverse(f.chart, f.x);
  double s = 0.0;
  for (int a = 0; a < 4; ++a) s += Gi[a][a] * inner(f.A[a], f.A[a]);
  return s;
}

inline double gamma_norm2_twoform(const PointFields& f) {
  Mat4 Gi = gamma_inverse(f.chart, f.x);
  double s = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      s += Gi[a][a] * Gi[b][b] * inner(f.F[a][b], f.F[a][b]);
  return s;
}

inline double gamma_norm2_dphi(const PointFields& f) {
  Mat4 Gi = gamma_inverse(f.chart, f.x);
  double s = 0.0;
  for (int a = 0; a < 4; ++a) s += Gi[a][a] * inner(f.Dphi[a], f.Dphi[a]);
  return s;
}

// Potential measured along the unit sphere legs only.
inline double angular_norm2_A(const PointFields& f) {
  double rho = (f.chart == Chart::MinkSph) ? f.x[1] : std::sin(f.x[1]);
  double st = std::sin(f.x[2]);
  return inner(f.A[2], f.A[2]) / (rho * rho) +
         inner(f.A[3], f.A[3]) / (rho * rho * st * st);
}

// ---------------------------------------------------------------------------
// Null frame components (spherical charts)

struct NullComponents {
  Lie Fln, Flth, Flph, Fnth, Fnph, Fthph;
  Lie Dl, Dn, Dth, Dph;
  Lie phi;
};

inline NullComponents null_components(const PointFields& f) {
  NullFrame fr = null_frame(f.chart, f.x);
  auto contract2 = [&](const Vec4& a, const Vec4& b) {
    Lie s{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (a[i] != 0.0 && b[j] != 0.0) s += (a[i] * b[j]) * f.F[i][j];
    return s;
  };
  auto contract1 = [&](const Vec4& a) {
    Lie s{};
    for (int i = 0; i < 4; ++i)
      if (a[i] != 0.0) s += a[i] * f.Dphi[i];
    return s;
  };
  NullComponents n;
  n.Fln = contract2(fr.l, fr.n);
  n.Flth = contract2(fr.l, fr.eth);
  n.Flph = contract2(fr.l, fr.eph);
  n.Fnth = contract2(fr.n, fr.eth);
  n.Fnph = contract2(fr.n, fr.eph);
  n.Fthph = contract2(fr.eth, fr.eph);
  n.Dl = contract1(fr.l);
  n.Dn = contract1(fr.n);
  n.Dth = contract1(fr.eth);
  n.Dph = contract1(fr.eph);
  n.phi = f.phi;
  return n;
}

// ---------------------------------------------------------------------------
// Energy tensor of the conformally coupled system (the curvature term enters
// through the chart's constant R/12 mass only).

inline Mat4 stress_tensor(const PointFields& f, double lambda) {
  Mat4 g = metric(f.chart, f.x);
  Mat4 gi = inverse_metric(f.chart, f.x);
  double F2 = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      F2 += gi[a][a] * gi[b][b] * inner(f.F[a][b], f.F[a][b]);
  double D2 = 0.0;
  for (int a = 0; a < 4; ++a) D2 += gi[a][a] * inner(f.Dphi[a], f.Dphi[a]);
  double p2 = inner(f.phi, f.phi);
  double Lphi = 0.5 * D2 - 0.25 * lambda * p2 * p2 -
                (scalar_curvature(f.chart) / 12.0) * p2;
  Mat4 T;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double s = inner(f.Dphi[a], f.Dphi[b]) - g[a][b] * Lphi +
                 0.25 * g[a][b] * F2;
      for (int c = 0; c < 4; ++c)
        s -= gi[c][c] * inner(f.F[a][c], f.F[b][c]);
      T[a][b] = s;
    }
  return T;
}

}  // namespace cymh
