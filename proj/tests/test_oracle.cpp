#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cymh/fields.hpp"
#include "cymh/oracle.hpp"
#include "helpers.hpp"

using namespace cymh;

namespace {

// ---------------------------------------------------------------------------
// Taylor-extended equivariant data.
//
// Starting from closed-form radial profiles, extend every slot in time so
// that the first-order evolution equations hold exactly at t = 0, and (for
// the flat hedgehog) so do their first time derivatives.  All slots are then
// polynomials in t, which the oracle's five-point stencils differentiate
// exactly; the residuals collapse to the spatial truncation floor if and
// only if the right-hand sides below are the correct reduced equations.

struct Jet3 {
  double f = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0;
};

using Poly = std::vector<double>;  // ascending coefficients

double pval(const Poly& p, double r) {
  double v = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * r + p[i];
  return v;
}

// coefficients of d/dr [p(r) exp(-r^2)] / exp(-r^2) = p' - 2 r p
Poly gderiv(const Poly& p) {
  Poly q(p.size() + 1, 0.0);
  for (std::size_t i = 1; i < p.size(); ++i) q[i - 1] += i * p[i];
  for (std::size_t i = 0; i < p.size(); ++i) q[i + 1] -= 2.0 * p[i];
  return q;
}

Jet3 gauss_jet(const Poly& p, double r) {
  Poly p1 = gderiv(p), p2 = gderiv(p1), p3 = gderiv(p2);
  double e = std::exp(-r * r);
  return {pval(p, r) * e, pval(p1, r) * e, pval(p2, r) * e, pval(p3, r) * e};
}

struct FlatHedgehogExt {
  Poly Pw{0.0, 0.0, 0.3};          // w - 1
  Poly Ppw{0.0, 0.0, 0.2};         // dw/dt
  Poly Ph{0.0, 0.25};              // h
  Poly Pph{0.0, 0.0, 0.0, 0.15};   // dh/dt
  double lambda = 0.0;
  double wpert = 0.0, hpert = 0.0;  // forced equation defects

  ProfilePoint at(double t, double r) const {
    double s = kInvSqrt2;
    Jet3 jw = gauss_jet(Pw, r), jp = gauss_jet(Ppw, r);
    Jet3 jh = gauss_jet(Ph, r), jq = gauss_jet(Pph, r);
    double w0 = 1.0 + jw.f;
    double W = 1.0 - w0, A1 = 1.0 - s * W, G = 2.0 * W - s * W * W;
    double r2 = r * r;
    double h0 = jh.f;

    double Nw = A1 * G / r2 - s * A1 * h0 * h0;
    double rw = jw.d2 + Nw + wpert;
    double dNdW = (-s * G + A1 * (2.0 - 2.0 * s * W)) / r2 + s * s * h0 * h0;
    double Nw_w = -dNdW;
    double Nw_h = -2.0 * s * A1 * h0;
    double Nw_r = -2.0 * A1 * G / (r2 * r);
    double rw_r = jw.d3 + Nw_w * jw.d1 + Nw_h * jh.d1 + Nw_r;
    double rw_t = jp.d2 + Nw_w * jp.f + Nw_h * jq.f;

    double rh = jh.d2 + 2.0 * jh.d1 / r - 2.0 * h0 * A1 * A1 / r2 -
                lambda * h0 * h0 * h0 + hpert;
    double rh_r = jh.d3 + 2.0 * jh.d2 / r - 2.0 * jh.d1 / r2 -
                  2.0 * (jh.d1 * A1 * A1 + 2.0 * s * h0 * A1 * jw.d1) / r2 +
                  4.0 * h0 * A1 * A1 / (r2 * r) -
                  3.0 * lambda * h0 * h0 * jh.d1;
    double rh_t = jq.d2 + 2.0 * jq.d1 / r -
                  2.0 * (jq.f * A1 * A1 + 2.0 * s * h0 * A1 * jp.f) / r2 -
                  3.0 * lambda * h0 * h0 * jq.f;

    double t2 = 0.5 * t * t;
    ProfilePoint p;
    p.w = w0 + t * jp.f + t2 * rw;
    p.pw = jp.f + t * rw + t2 * rw_t;
    p.dw = jw.d1 + t * jp.d1 + t2 * rw_r;
    p.h = h0 + t * jq.f + t2 * rh;
    p.ph = jq.f + t * rh + t2 * rh_t;
    p.dh = jh.d1 + t * jq.d1 + t2 * rh_r;
    return p;
  }
};

// Cylinder profiles are built from c = cos(zeta); a linear time extension is
// enough for the first-order gate.
struct CylHedgehogExt {
  double aw = 0.3, bw = 0.2, ah = 0.25, bh = 0.15;
  double lambda = 0.0;
  double wpert = 0.0, hpert = 0.0;

  ProfilePoint at(double t, double z) const {
    double s = kInvSqrt2;
    double sz = std::sin(z), cz = std::cos(z), e = std::exp(cz);
    // w0 - 1 = aw (1 - c^2) e^c and its zeta-derivatives
    double u0 = (1.0 - cz * cz) * e;
    double u1 = (1.0 - 2.0 * cz - cz * cz) * e;   // d/dc
    double u2 = (-1.0 - 4.0 * cz - cz * cz) * e;  // d^2/dc^2
    double w0 = 1.0 + aw * u0;
    double w1 = -aw * sz * u1;
    double w2 = aw * (sz * sz * u2 - cz * u1);
    // h0 = ah s e^c
    double h0 = ah * sz * e;
    double h1 = ah * (cz * cz + cz - 1.0) * e;
    double h2 = -ah * sz * cz * (cz + 3.0) * e;
    // time-derivative profiles, distinct shapes
    double e2 = std::exp(-cz);
    double pw0 = bw * (1.0 - cz * cz) * e2;
    double pw1 = -bw * sz * (cz * cz - 2.0 * cz - 1.0) * e2;
    double ph0 = bh * sz * cz * e2;
    double ph1 = bh * (cz * cz - sz * sz + sz * sz * cz) * e2;

    double W = 1.0 - w0, A1 = 1.0 - s * W, G = 2.0 * W - s * W * W;
    double s2 = sz * sz;
    double rw = w2 + A1 * G / s2 - s * A1 * h0 * h0 + wpert;
    double rh = h2 + 2.0 * (cz / sz) * h1 - 2.0 * h0 * A1 * A1 / s2 -
                lambda * h0 * h0 * h0 - h0 + hpert;

    ProfilePoint p;
    p.w = w0 + t * pw0;
    p.pw = pw0 + t * rw;
    p.dw = w1 + t * pw1;
    p.h = h0 + t * ph0;
    p.ph = ph0 + t * rh;
    p.dh = h1 + t * ph1;
    return p;
  }
};

Vec4 cart_of(double r, double th, double ph, double t) {
  return {t, r * std::sin(th) * std::cos(ph), r * std::sin(th) * std::sin(ph),
          r * std::cos(th)};
}

double dot4(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// Arbitrary smooth nonabelian configuration, nothing close to a solution.
struct GenericSrc {
  Chart chart;
  Lie P[4], R[4];
  Vec4 q[4], u[4];
  Lie S, T;
  Vec4 k, l;

  explicit GenericSrc(Chart c, testutil::Rng& rng) : chart(c) {
    auto vec = [&] { return Lie{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)}; };
    auto cov = [&] { return Vec4{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}; };
    for (int a = 0; a < 4; ++a) { P[a] = vec(); R[a] = vec(); q[a] = cov(); u[a] = cov(); }
    S = vec(); T = vec(); k = cov(); l = cov();
  }

  PointFields operator()(const Vec4& x) const {
    PointFields f;
    f.chart = chart;
    f.x = x;
    Lie dA[4][4];  // [c][a] = d_c A_a
    for (int a = 0; a < 4; ++a) {
      double sq = std::sin(dot4(q[a], x)), cq = std::cos(dot4(q[a], x));
      double su = std::sin(dot4(u[a], x)), cu = std::cos(dot4(u[a], x));
      f.A[a] = sq * P[a] + cu * R[a];
      for (int c = 0; c < 4; ++c) dA[c][a] = (q[a][c] * cq) * P[a] - (u[a][c] * su) * R[a];
    }
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        set_F(f, a, b, dA[a][b] - dA[b][a] + bracket(f.A[a], f.A[b]));
    double sk = std::sin(dot4(k, x)), ck = std::cos(dot4(k, x));
    double sl = std::sin(dot4(l, x)), cl = std::cos(dot4(l, x));
    f.phi = sk * S + cl * T;
    for (int c = 0; c < 4; ++c)
      f.Dphi[c] = (k[c] * ck) * S - (l[c] * sl) * T + bracket(f.A[c], f.phi);
    return f;
  }
};

}  // namespace

TEST_CASE("flat hedgehog data extended along its own flow annihilates the field equations") {
  for (double lambda : {0.0, 1.0}) {
    FlatHedgehogExt ext;
    ext.lambda = lambda;
    auto src = [&](const Vec4& x) {
      return hedgehog_point(Chart::MinkSph, x, ext.at(x[0], x[1]));
    };
    for (double r : {0.7, 1.3, 2.1}) {
      for (double th : {0.9, 2.0}) {
        Vec4 x{0.0, r, th, 1.1};
        for (int a = 0; a < 4; ++a)
          CHECK(norm(ym_residual(src, x, a)) < 1e-6);
        CHECK(norm(higgs_residual(src, x, lambda)) < 1e-6);
      }
    }
  }
}

TEST_CASE("cylinder hedgehog gate, conformal mass included") {
  for (double lambda : {0.0, 1.0}) {
    CylHedgehogExt ext;
    ext.lambda = lambda;
    auto src = [&](const Vec4& x) {
      return hedgehog_point(Chart::Cylinder, x, ext.at(x[0], x[1]));
    };
    for (double z : {0.6, 1.4, 2.5}) {
      for (double th : {0.8, 1.9}) {
        Vec4 x{0.0, z, th, 0.4};
        for (int a = 0; a < 4; ++a)
          CHECK(norm(ym_residual(src, x, a)) < 1e-6);
        CHECK(norm(higgs_residual(src, x, lambda)) < 1e-6);
      }
    }
  }
}

TEST_CASE("forced defects in either equation are detected") {
  Vec4 x{0.0, 1.3, 0.9, 1.1};
  {
    FlatHedgehogExt ext;
    ext.wpert = 0.01;
    auto src = [&](const Vec4& p) {
      return hedgehog_point(Chart::MinkSph, p, ext.at(p[0], p[1]));
    };
    double worst = 0.0;
    for (int a = 0; a < 4; ++a) worst = std::max(worst, norm(ym_residual(src, x, a)));
    CHECK(worst > 1e-4);
    CHECK(norm(higgs_residual(src, x, 0.0)) < 1e-6);  // untouched equation stays clean
  }
  {
    FlatHedgehogExt ext;
    ext.hpert = 0.01;
    auto src = [&](const Vec4& p) {
      return hedgehog_point(Chart::MinkSph, p, ext.at(p[0], p[1]));
    };
    CHECK(norm(higgs_residual(src, x, 0.0)) > 1e-4);
  }
  {
    CylHedgehogExt ext;
    ext.hpert = 0.01;
    auto src = [&](const Vec4& p) {
      return hedgehog_point(Chart::Cylinder, p, ext.at(p[0], p[1]));
    };
    CHECK(norm(higgs_residual(src, Vec4{0.0, 1.4, 0.8, 0.4}, 0.0)) > 1e-4);
  }
}

TEST_CASE("hedgehog data satisfies the constraint pointwise") {
  FlatHedgehogExt fext;
  auto fsrc = [&](const Vec4& x) {
    return hedgehog_point(Chart::MinkSph, x, fext.at(x[0], x[1]));
  };
  auto csrc = [&](const Vec4& x) {
    return hedgehog_point(Chart::Cylinder, x, CylHedgehogExt{}.at(x[0], x[1]));
  };
  auto cart = [&](const Vec4& x) {
    double r = std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
    return hedgehog_cart_point(x, fext.at(x[0], r));
  };
  // slices away from t = 0, where nothing solves the evolution equations
  for (double r : {0.8, 1.7}) {
    CHECK(norm(gauss_residual(fsrc, Vec4{0.37, r, 1.0, 0.5})) < 1e-8);
    CHECK(norm(gauss_residual(csrc, Vec4{0.37, r, 1.0, 0.5})) < 1e-8);
    CHECK(norm(gauss_residual(cart, cart_of(r, 1.0, 0.5, 0.37))) < 1e-8);
  }
}

TEST_CASE("constraint equals the time leg of the field equations") {
  testutil::Rng rng(0x9e3779b97f4a7c15ull);
  for (Chart c : {Chart::MinkSph, Chart::Cylinder}) {
    GenericSrc src(c, rng);
    for (int trial = 0; trial < 3; ++trial) {
      Vec4 x{rng.uniform(-0.3, 0.3), rng.uniform(0.8, 2.2),
             rng.uniform(0.7, 2.3), rng.uniform(0.0, 6.0)};
      Lie a0 = ym_residual(src, x, 0);
      Lie g = gauss_residual(src, x);
      CHECK(norm(a0 + g) < 1e-9);
    }
  }
}

TEST_CASE("second-order identities hold on flow-extended flat data") {
  for (double lambda : {0.0, 1.0}) {
    FlatHedgehogExt ext;
    ext.lambda = lambda;
    auto src = [&](const Vec4& x) {
      double r = std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
      return hedgehog_cart_point(x, ext.at(x[0], r));
    };
    for (const Vec4& x : {cart_of(1.1, 0.9, 0.5, 0.0), cart_of(1.8, 2.1, 3.9, 0.0)}) {
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
          CHECK(norm(wave_residual_F(src, x, a, b)) < 1e-6);
      for (int b = 0; b < 4; ++b)
        CHECK(norm(wave_residual_Dphi(src, x, b, lambda)) < 1e-6);
    }
  }
  // the gate notices a forced defect in the first-order flow
  FlatHedgehogExt bad;
  bad.wpert = 0.01;
  auto src = [&](const Vec4& x) {
    double r = std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
    return hedgehog_cart_point(x, bad.at(x[0], r));
  };
  Vec4 x = cart_of(1.1, 0.9, 0.5, 0.0);
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      worst = std::max(worst, norm(wave_residual_F(src, x, a, b)));
  CHECK(worst > 1e-4);
}

TEST_CASE("abelian plane wave annihilates the curvature wave operator") {
  auto src = [](const Vec4& x) {
    PointFields f;
    f.chart = Chart::MinkCart;
    f.x = x;
    double s = x[0] - x[3];
    double a = std::sin(1.3 * s + 0.4), da = 1.3 * std::cos(1.3 * s + 0.4);
    f.A[1] = {a, 0.0, 0.0};
    set_F(f, 0, 1, {da, 0.0, 0.0});
    set_F(f, 3, 1, {-da, 0.0, 0.0});
    return f;
  };
  for (const Vec4& x : {Vec4{0.3, 0.1, -0.4, 0.9}, Vec4{-1.2, 0.6, 0.2, 0.5}}) {
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        CHECK(norm(wave_residual_F(src, x, a, b)) < 1e-8);
  }
  // wrong propagation speed leaves a d'Alembertian remainder
  auto badsrc = [](const Vec4& x) {
    PointFields f;
    f.chart = Chart::MinkCart;
    f.x = x;
    double s = x[0] - 2.0 * x[3];
    double a = std::sin(1.3 * s + 0.4), da = 1.3 * std::cos(1.3 * s + 0.4);
    f.A[1] = {a, 0.0, 0.0};
    set_F(f, 0, 1, {da, 0.0, 0.0});
    set_F(f, 3, 1, {-2.0 * da, 0.0, 0.0});
    return f;
  };
  CHECK(norm(wave_residual_F(badsrc, Vec4{0.3, 0.1, -0.4, 0.9}, 0, 1)) > 0.1);
}

TEST_CASE("free spherical pulse solves the scalar equation in the flat spherical chart") {
  auto g = [](double s) { return std::sin(0.9 * s + 0.2); };
  auto dg = [](double s) { return 0.9 * std::cos(0.9 * s + 0.2); };
  auto src = [&](const Vec4& x) {
    double t = x[0], r = x[1];
    double c = (g(t - r) - g(t + r)) / r;
    double pc = (dg(t - r) - dg(t + r)) / r;
    double dc = (-dg(t - r) - dg(t + r)) / r - c / r;
    return fixed_direction_point(Chart::MinkSph, x, c, pc, dc);
  };
  for (const Vec4& x : {Vec4{0.5, 1.1, 0.8, 0.3}, Vec4{2.0, 0.7, 1.9, 2.2},
                        Vec4{1.3, 2.6, 1.2, 4.0}}) {
    CHECK(norm(higgs_residual(src, x, 0.0)) < 1e-7);
    CHECK(norm(ym_residual(src, x, 2)) < 1e-12);  // no gauge field at all
  }
}

TEST_CASE("oscillating constant mode solves the cylinder equation and its de Sitter image") {
  double amp = 0.8, ph0 = 0.3;
  auto cyl = [&](const Vec4& x) {
    return fixed_direction_point(Chart::Cylinder, x, amp * std::cos(x[0] + ph0),
                                 -amp * std::sin(x[0] + ph0), 0.0);
  };
  for (double tau : {-0.9, 0.2, 1.1}) {
    CHECK(norm(higgs_residual(cyl, Vec4{tau, 1.0, 1.3, 0.7}, 0.0)) < 1e-9);
  }
  auto ds = [&](const Vec4& x) {
    double al = x[0];
    double om = 1.0 / std::cosh(al);
    double tau = gudermann(al);
    double c = om * amp * std::cos(tau + ph0);
    double pc = -om * std::tanh(al) * amp * std::cos(tau + ph0) -
                om * om * amp * std::sin(tau + ph0);
    return fixed_direction_point(Chart::DeSitter, x, c, pc, 0.0);
  };
  for (double al : {-0.7, 0.4, 1.5}) {
    CHECK(norm(higgs_residual(ds, Vec4{al, 1.0, 1.3, 0.7}, 0.0)) < 1e-8);
  }
}

TEST_CASE("radial scalar gate in both frames") {
  // flat: dc/dt = c'' + 2 c'/r - lambda c^3, linear time extension
  for (double lambda : {0.0, 1.0}) {
    Poly Pc{0.4}, Pp{0.0, 0.0, 0.3};
    auto src = [&](const Vec4& x) {
      double t = x[0], r = x[1];
      Jet3 jc = gauss_jet(Pc, r), jp = gauss_jet(Pp, r);
      double rc = jc.d2 + 2.0 * jc.d1 / r - lambda * jc.f * jc.f * jc.f;
      return fixed_direction_point(Chart::MinkSph, x, jc.f + t * jp.f,
                                   jp.f + t * rc, jc.d1 + t * jp.d1);
    };
    for (double r : {0.6, 1.5})
      CHECK(norm(higgs_residual(src, Vec4{0.0, r, 1.0, 0.5}, lambda)) < 1e-7);
  }
  // cylinder: dc/dt = c'' + 2 cot(z) c' - c - lambda c^3
  for (double lambda : {0.0, 1.0}) {
    double mass = 1.0;
    auto src = [&](const Vec4& x) {
      double t = x[0], z = x[1];
      double sz = std::sin(z), cz = std::cos(z), e = std::exp(cz);
      double c0 = 0.3 * e, c1 = -0.3 * sz * e, c2 = 0.3 * (sz * sz - cz) * e;
      double p0 = 0.2 * cz * e, p1 = 0.2 * (-sz - sz * cz) * e;
      double rc = c2 + 2.0 * (cz / sz) * c1 - mass * c0 - lambda * c0 * c0 * c0;
      return fixed_direction_point(Chart::Cylinder, x, c0 + t * p0, p0 + t * rc,
                                   c1 + t * p1);
    };
    for (double z : {0.7, 1.8})
      CHECK(norm(higgs_residual(src, Vec4{0.0, z, 1.0, 0.5}, lambda)) < 1e-7);
  }
  // dropping the curvature mass is caught
  {
    auto src = [&](const Vec4& x) {
      double t = x[0], z = x[1];
      double sz = std::sin(z), cz = std::cos(z), e = std::exp(cz);
      double c0 = 0.3 * e, c1 = -0.3 * sz * e, c2 = 0.3 * (sz * sz - cz) * e;
      double rc = c2 + 2.0 * (cz / sz) * c1;  // no mass term
      return fixed_direction_point(Chart::Cylinder, x, c0, 0.0 + t * rc, c1);
    };
    CHECK(norm(higgs_residual(src, Vec4{0.0, 1.8, 1.0, 0.5}, 0.0)) > 1e-3);
  }
}
