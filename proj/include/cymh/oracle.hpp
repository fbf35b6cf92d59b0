#pragma once

// Residual oracles: finite-difference evaluations of the covariant field
// equations and of the derived second-order wave identities, applied to any
// field provider.  A provider maps a chart point to PointFields; everything
// here differentiates the provider with 4th-order stencils of step eps.
//
// Conventions (see algebra.hpp for the bracket scale):
//   YM:     g^{bc} D_c F_{ab} + [D_a phi, phi] = 0
//   Higgs:  g^{ab}(D_a D_b phi - Gamma^c_{ab} D_c phi) + (R/6) phi
//           + lambda |phi|^2 phi = 0
//   Gauss:  sum_i D_i E_i - [pi, phi] = 0   (minus the time leg of YM)

#include <cmath>

#include "cymh/fields.hpp"

namespace cymh {

namespace detail {

template <class Src>
struct Probe {
  // fields at x and at x +- {1,2} eps along each coordinate
  PointFields ctr;
  PointFields off[4][4];  // [dir][0..3] = -2e, -e, +e, +2e
  double inv12eps;

  Probe(const Src& src, const Vec4& x, double eps, bool spatial_only = false)
      : inv12eps(1.0 / (12.0 * eps)) {
    ctr = src(x);
    for (int d = spatial_only ? 1 : 0; d < 4; ++d) {
      static const double step[4] = {-2.0, -1.0, 1.0, 2.0};
      for (int k = 0; k < 4; ++k) {
        Vec4 y = x;
        y[d] += step[k] * eps;
        off[d][k] = src(y);
      }
    }
    if (spatial_only)
      for (int k = 0; k < 4; ++k) off[0][k] = ctr;
  }

  template <class Get>
  Lie d1(int dir, Get&& get) const {
    return inv12eps * (get(off[dir][0]) + (-8.0) * get(off[dir][1]) +
                       8.0 * get(off[dir][2]) + (-1.0) * get(off[dir][3]));
  }

  template <class Get>
  Lie d2(int dir, Get&& get) const {
    double i12e2 = inv12eps * inv12eps * 12.0;
    return i12e2 * ((-1.0) * get(off[dir][0]) + 16.0 * get(off[dir][1]) +
                    (-30.0) * get(ctr) + 16.0 * get(off[dir][2]) +
                    (-1.0) * get(off[dir][3]));
  }
};

}  // namespace detail

template <class Src>
Lie ym_residual(const Src& src, const Vec4& x, int a, double eps = 1e-3) {
  detail::Probe<Src> pr(src, x, eps);
  const PointFields& c = pr.ctr;
  Mat4 gi = inverse_metric(c.chart, x);
  Christoffel G = christoffels(c.chart, x);
  Lie res = bracket(c.Dphi[a], c.phi);
  for (int b = 0; b < 4; ++b) {
    double w = gi[b][b];
    Lie term = pr.d1(b, [&](const PointFields& f) { return f.F[a][b]; });
    for (int d = 0; d < 4; ++d) {
      term -= G.g[d][b][a] * c.F[d][b];
      term -= G.g[d][b][b] * c.F[a][d];
    }
    term += bracket(c.A[b], c.F[a][b]);
    res += w * term;
  }
  return res;
}

template <class Src>
Lie higgs_residual(const Src& src, const Vec4& x, double lambda, double eps = 1e-3) {
  detail::Probe<Src> pr(src, x, eps);
  const PointFields& c = pr.ctr;
  Mat4 gi = inverse_metric(c.chart, x);
  Christoffel G = christoffels(c.chart, x);
  double p2 = inner(c.phi, c.phi);
  Lie res = (conformal_mass(c.chart) + lambda * p2) * c.phi;
  for (int a = 0; a < 4; ++a) {
    double w = gi[a][a];
    Lie term = pr.d1(a, [&](const PointFields& f) { return f.Dphi[a]; });
    term += bracket(c.A[a], c.Dphi[a]);
    for (int d = 0; d < 4; ++d) term -= G.g[d][a][a] * c.Dphi[d];
    res += w * term;
  }
  return res;
}

// Spatial derivatives only, so a single-slice provider suffices.
template <class Src>
Lie gauss_residual(const Src& src, const Vec4& x, double eps = 1e-3) {
  detail::Probe<Src> pr(src, x, eps, /*spatial_only=*/true);
  const PointFields& c = pr.ctr;
  Mat4 gi = inverse_metric(c.chart, x);
  Christoffel G = christoffels(c.chart, x);
  Lie res = -1.0 * bracket(c.Dphi[0], c.phi);
  for (int i = 1; i < 4; ++i) {
    double w = -gi[i][i];
    Lie term = pr.d1(i, [&](const PointFields& f) { return f.F[0][i]; });
    for (int d = 0; d < 4; ++d) {
      term -= G.g[d][i][0] * c.F[d][i];
      term -= G.g[d][i][i] * c.F[0][d];
    }
    term += bracket(c.A[i], c.F[0][i]);
    res += w * term;
  }
  return res;
}

// Second-order identity satisfied by solutions on the flat Cartesian chart:
//   box F_ab = -2[A^c, d_c F_ab] - [d^c A_c, F_ab] - [A^c, [A_c, F_ab]]
//              + [[F_ab, phi], phi] - 2[D_a phi, D_b phi] + 2 g^{cd}[F_da, F_cb]
template <class Src>
Lie wave_residual_F(const Src& src, const Vec4& x, int a, int b, double eps = 1e-3) {
  detail::Probe<Src> pr(src, x, eps);
  const PointFields& c = pr.ctr;
  auto getF = [&](const PointFields& f) { return f.F[a][b]; };
  Lie box = pr.d2(0, getF);
  for (int i = 1; i < 4; ++i) box -= pr.d2(i, getF);

  Lie rhs{};
  double sgn[4] = {1.0, -1.0, -1.0, -1.0};  // raising with the flat metric
  Lie divA{};
  for (int cc = 0; cc < 4; ++cc) {
    Lie dF = pr.d1(cc, getF);
    rhs -= 2.0 * sgn[cc] * bracket(c.A[cc], dF);
    divA += sgn[cc] * pr.d1(cc, [&](const PointFields& f) { return f.A[cc]; });
    rhs -= sgn[cc] * bracket(c.A[cc], bracket(c.A[cc], c.F[a][b]));
    rhs += 2.0 * sgn[cc] * bracket(c.F[cc][a], c.F[cc][b]);
  }
  rhs -= bracket(divA, c.F[a][b]);
  rhs += bracket(bracket(c.F[a][b], c.phi), c.phi);
  rhs -= 2.0 * bracket(c.Dphi[a], c.Dphi[b]);
  return box - rhs;
}

// Companion identity for the covariant gradient of the scalar (flat chart):
//   box Dphi_b = -2[A^c, d_c Dphi_b] - [d^c A_c, Dphi_b] - [A^c,[A_c,Dphi_b]]
//                - lambda (2 <phi, Dphi_b> phi + |phi|^2 Dphi_b)
//                + 2 g^{cd} [F_cb, D_d phi] + [[Dphi_b, phi], phi]
template <class Src>
Lie wave_residual_Dphi(const Src& src, const Vec4& x, int b, double lambda,
                       double eps = 1e-3) {
  detail::Probe<Src> pr(src, x, eps);
  const PointFields& c = pr.ctr;
  auto getD = [&](const PointFields& f) { return f.Dphi[b]; };
  Lie box = pr.d2(0, getD);
  for (int i = 1; i < 4; ++i) box -= pr.d2(i, getD);

  Lie rhs{};
  double sgn[4] = {1.0, -1.0, -1.0, -1.0};
  Lie divA{};
  for (int cc = 0; cc < 4; ++cc) {
    rhs -= 2.0 * sgn[cc] * bracket(c.A[cc], pr.d1(cc, getD));
    divA += sgn[cc] * pr.d1(cc, [&](const PointFields& f) { return f.A[cc]; });
    rhs -= sgn[cc] * bracket(c.A[cc], bracket(c.A[cc], c.Dphi[b]));
    rhs += 2.0 * sgn[cc] * bracket(c.F[cc][b], c.Dphi[cc]);
  }
  rhs -= bracket(divA, c.Dphi[b]);
  rhs -= lambda * (2.0 * inner(c.phi, c.Dphi[b]) * c.phi +
                   inner(c.phi, c.phi) * c.Dphi[b]);
  rhs += bracket(bracket(c.Dphi[b], c.phi), c.phi);
  return box - rhs;
}

}  // namespace cymh
