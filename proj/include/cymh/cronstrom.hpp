#pragma once
// Radial gauge about an arbitrary apex.  A gauge field is brought to the
// gauge xi^a A_a = 0 (xi the displacement from the apex) by parallel
// transport along straight rays; the potential is then recovered from the
// curvature alone by the ray integral A_b(x) = int_0^1 s xi^a F_{ab} ds.
// Everything here works with point sources in the Cartesian flat chart.

#include <array>
#include <cmath>
#include <stdexcept>

#include "cymh/fields.hpp"

namespace cymh {

namespace detail {

// 8-point Gauss-Legendre rule on [-1, 1], nodes ascending.
inline constexpr double kGl8X[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975363};
inline constexpr double kGl8W[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

// xi^a A_a at the ray point apex + s xi.
template <class Src>
Lie ray_potential(const Src& src, const Vec4& apex, const Vec4& xi, double s) {
  PointFields f = src(apex + s * xi);
  if (f.chart != Chart::MinkCart)
    throw std::invalid_argument("radial gauge needs Cartesian point fields");
  Lie a{};
  for (int c = 0; c < 4; ++c) a = a + xi[c] * f.A[c];
  return a;
}

// March the transporter dg/ds = -ad(xi.A) g from s0 to s1.
template <class Src>
void advance_transport(const Src& src, const Vec4& apex, const Vec4& xi,
                       double s0, double s1, int nsub, Mat3& g) {
  double h = (s1 - s0) / nsub;
  for (int k = 0; k < nsub; ++k) {
    double s = s0 + k * h;
    Mat3 m0 = lie_matrix(ray_potential(src, apex, xi, s));
    Mat3 mm = lie_matrix(ray_potential(src, apex, xi, s + 0.5 * h));
    Mat3 m1 = lie_matrix(ray_potential(src, apex, xi, s + h));
    Mat3 k1 = -1.0 * (m0 * g);
    Mat3 k2 = -1.0 * (mm * (g + (0.5 * h) * k1));
    Mat3 k3 = -1.0 * (mm * (g + (0.5 * h) * k2));
    Mat3 k4 = -1.0 * (m1 * (g + h * k3));
    g += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

}  // namespace detail

// Transformation U(x) that radialises the gauge about apex: the inverse of
// the path-ordered exponential of -xi.A along the ray from apex to x.
template <class Src>
Mat3 ray_transport(const Src& src, const Vec4& apex, const Vec4& x,
                   int steps = 256) {
  Mat3 g = Mat3::identity();
  detail::advance_transport(src, apex, x - apex, 0.0, 1.0, steps, g);
  return transpose(g);
}

// Radial-gauge potential at x from the curvature of src.  The curvature is
// conjugated into the radial gauge node by node with the same transporter,
// so src may sit in any gauge.
template <class Src>
std::array<Lie, 4> reconstruct_potential(const Src& src, const Vec4& apex,
                                         const Vec4& x, int panels = 8,
                                         int substeps = 8) {
  Vec4 xi = x - apex;
  Mat3 g = Mat3::identity();
  std::array<Lie, 4> acc{};
  double prev = 0.0;
  for (int p = 0; p < panels; ++p) {
    double lo = double(p) / panels, hi = double(p + 1) / panels;
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int k = 0; k < 8; ++k) {
      double s = mid + half * detail::kGl8X[k];
      detail::advance_transport(src, apex, xi, prev, s, substeps, g);
      prev = s;
      PointFields f = src(apex + s * xi);
      Mat3 U = transpose(g);
      for (int b = 0; b < 4; ++b) {
        Lie fs{};
        for (int a = 0; a < 4; ++a) fs = fs + xi[a] * f.F[a][b];
        acc[b] = acc[b] + (detail::kGl8W[k] * half * s) * adjoint_act(U, fs);
      }
    }
  }
  return acc;
}

// Both sides of the flat divergence identity of the radial-gauge potential:
// d^b A_b(x) against the ray integral of s^2 xi^a ([F_ab, A^b] - [D_a phi, phi])
// with every field conjugated into the radial gauge.  The sides agree exactly
// when src solves the field equations; their gap measures the defect.
struct DivergenceSides {
  Lie lhs, rhs;
};

template <class Src>
DivergenceSides radial_divergence(const Src& src, const Vec4& apex,
                                  const Vec4& x, double eps = 1e-2,
                                  int panels = 8, int substeps = 8) {
  Vec4 xi = x - apex;
  DivergenceSides out;

  for (int c = 0; c < 4; ++c) {
    Vec4 e{};
    e[c] = 1.0;
    auto leg = [&](double d) {
      return reconstruct_potential(src, apex, x + d * e, panels, substeps)[c];
    };
    Lie der = (1.0 / (12.0 * eps)) *
              (8.0 * (leg(eps) - leg(-eps)) - (leg(2.0 * eps) - leg(-2.0 * eps)));
    out.lhs = out.lhs + (c == 0 ? 1.0 : -1.0) * der;
  }

  Mat3 g = Mat3::identity();
  double prev = 0.0;
  for (int p = 0; p < panels; ++p) {
    double lo = double(p) / panels, hi = double(p + 1) / panels;
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int k = 0; k < 8; ++k) {
      double s = mid + half * detail::kGl8X[k];
      detail::advance_transport(src, apex, xi, prev, s, substeps, g);
      prev = s;
      Vec4 y = apex + s * xi;
      PointFields f = src(y);
      Mat3 U = transpose(g);
      std::array<Lie, 4> abar = reconstruct_potential(src, apex, y, panels, substeps);
      Lie phibar = adjoint_act(U, f.phi);
      Lie val{};
      for (int a = 0; a < 4; ++a) {
        Lie t{};
        for (int b = 0; b < 4; ++b) {
          double sgn = (b == 0) ? 1.0 : -1.0;
          t = t + sgn * bracket(adjoint_act(U, f.F[a][b]), abar[b]);
        }
        t = t - bracket(adjoint_act(U, f.Dphi[a]), phibar);
        val = val + xi[a] * t;
      }
      out.rhs = out.rhs + (detail::kGl8W[k] * half * s * s) * val;
    }
  }
  return out;
}

}  // namespace cymh
