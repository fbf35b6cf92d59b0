#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cymh/evolve.hpp"
#include "cymh/oracle.hpp"
#include "cymh/profiles.hpp"
#include "cymh/sampler.hpp"
#include "helpers.hpp"

using namespace cymh;

namespace {

// Largest pointwise deviation between two states over the active arrays.
double maxdev(const EquivariantState& a, const EquivariantState& b) {
  detail::ArrayPair ap[4];
  int na = detail::active_pairs(a.ansatz, ap);
  double m = 0.0;
  for (int q = 0; q < na; ++q) {
    const auto& x = a.*(ap[q].s);
    const auto& y = b.*(ap[q].s);
    for (std::size_t i = 0; i < x.size(); ++i)
      m = std::max(m, std::abs(x[i] - y[i]));
  }
  return m;
}

// Jacobi elliptic cn/sn/dn by the arithmetic-geometric mean, an integrator-
// free reference for the cubic oscillator.
void jacobi_cn(double u, double k, double* cn, double* sn, double* dn) {
  double a[32], c[32];
  a[0] = 1.0;
  c[0] = k;
  double g = std::sqrt(1.0 - k * k);
  int nlev = 0;
  while (std::abs(c[nlev]) > 1e-17 && nlev < 31) {
    double an = 0.5 * (a[nlev] + g);
    double gn = std::sqrt(a[nlev] * g);
    c[nlev + 1] = 0.5 * (a[nlev] - g);
    a[nlev + 1] = an;
    g = gn;
    ++nlev;
  }
  double phi = std::ldexp(1.0, nlev) * a[nlev] * u;
  for (int i = nlev; i > 0; --i)
    phi = 0.5 * (phi + std::asin(std::max(-1.0, std::min(1.0, c[i] / a[i] * std::sin(phi)))));
  *sn = std::sin(phi);
  *cn = std::cos(phi);
  *dn = std::sqrt(1.0 - k * k * *sn * *sn);
}

// Fourth-order first derivative of a grid array that is even about both
// endpoints, used by the test-side energy quadrature.
double d1_even(const std::vector<double>& f, int i, double inv_dx) {
  int n = int(f.size()) - 1;
  auto at = [&](int j) {
    if (j < 0) j = -j;
    if (j > n) j = 2 * n - j;
    return f[j];
  };
  return (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) * inv_dx / 12.0;
}

// Reduced conserved energy of the fixed-direction flow on the cylinder,
// by composite Simpson over the grid.
double energy_fixed_cyl(const EquivariantState& st) {
  int n = st.n();
  double dx = st.dx();
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    double z = i * dx;
    double S = std::sin(z);
    double cv = st.c[i];
    double dc = d1_even(st.c, i, 1.0 / dx);
    double dens = S * S * (0.5 * st.pc[i] * st.pc[i] + 0.5 * dc * dc +
                           0.5 * cv * cv + 0.25 * st.lambda * cv * cv * cv * cv);
    double wgt = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += wgt * dens;
  }
  return 4.0 * kPi * acc * dx / 3.0;
}

// Simpson in time over trajectory frames of one array at one node.
double time_integral(const Trajectory& tr,
                     std::vector<double> EquivariantState::*arr, int node) {
  int m = int(tr.frames.size()) - 1;
  REQUIRE(m % 2 == 0);
  double acc = 0.0;
  for (int i = 0; i <= m; ++i) {
    double wgt = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += wgt * (tr.frames[i].*arr)[node];
  }
  return acc * tr.dt / 3.0;
}

double worst_residual(const StateExtension& ext, const EquivariantState& st,
                      const Vec4& x) {
  auto src = ext.at(x[1]);
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    worst = std::max(worst, norm(ym_residual(src, x, a)));
  worst = std::max(worst, norm(higgs_residual(src, x, st.lambda)));
  return worst;
}

}  // namespace

TEST_CASE("constant cylinder mode is the exact oscillator at vanishing coupling") {
  auto st = make_state(Chart::Cylinder, Ansatz::FixedDirection, 64, 0.0);
  ProfileSpec sp;
  sp.family = ProfileSpec::Family::Constant;
  sp.ac = 0.7;
  sp.apc = 0.4;
  fill_data(st, sp);
  auto init = st;

  RunConfig cfg;
  cfg.dt = 2.0 * kPi / 4096.0;
  cfg.t_end = 2.0 * kPi;
  auto res = run(st, cfg);
  REQUIRE(res.status == RunStatus::Ok);
  REQUIRE(res.steps == 4096);

  CHECK(maxdev(st, init) < 1e-8);  // full period return
  // the mode stays spatially uniform
  double spread = 0.0;
  for (double v : st.c) spread = std::max(spread, std::abs(v - st.c[0]));
  CHECK(spread < 1e-13);
}

TEST_CASE("constant cylinder mode follows the elliptic reference at unit coupling") {
  auto st = make_state(Chart::Cylinder, Ansatz::FixedDirection, 64, 1.0);
  ProfileSpec sp;
  sp.family = ProfileSpec::Family::Constant;
  sp.ac = 1.0;
  fill_data(st, sp);

  RunConfig cfg;
  cfg.dt = 10.0 / 8192.0;
  cfg.t_end = 10.0;
  REQUIRE(run(st, cfg).status == RunStatus::Ok);

  // c'' = -c - c^3 with c(0) = 1, c'(0) = 0 is cn(sqrt(2) t | k), k^2 = 1/4
  double om = std::sqrt(2.0);
  double cn, sn, dn;
  jacobi_cn(om * 10.0, 0.5, &cn, &sn, &dn);
  CHECK(std::abs(st.c[17] - cn) < 1e-7);
  CHECK(std::abs(st.pc[17] + om * sn * dn) < 1e-7);
}

TEST_CASE("reduced right sides match the covariant residuals on random smooth states") {
  testutil::Rng rng(2026);
  struct Combo {
    Chart bg;
    Ansatz an;
  } combos[4] = {{Chart::Cylinder, Ansatz::Hedgehog},
                 {Chart::Cylinder, Ansatz::FixedDirection},
                 {Chart::MinkSph, Ansatz::Hedgehog},
                 {Chart::MinkSph, Ansatz::FixedDirection}};
  for (const auto& cb : combos) {
    bool cyl = cb.bg == Chart::Cylinder;
    for (int trial = 0; trial < 3; ++trial) {
      double lambda = trial % 2 ? 1.0 : 0.0;
      auto st = make_state(cb.bg, cb.an, 768, lambda, cyl ? 0.0 : 8.0);
      ProfileSpec sp;
      sp.family = ProfileSpec::Family::Gaussian;
      sp.width = rng.uniform(0.9, 1.5);
      sp.aw = rng.uniform(-0.35, 0.35);
      sp.ah = rng.uniform(-0.3, 0.3);
      sp.ac = rng.uniform(-0.4, 0.4);
      sp.apw = rng.uniform(-0.2, 0.2);
      sp.aph = rng.uniform(-0.2, 0.2);
      sp.apc = rng.uniform(-0.3, 0.3);
      fill_data(st, sp);
      StateExtension ext(st);
      for (int pt = 0; pt < 2; ++pt) {
        double xr = cyl ? rng.uniform(0.7, 2.4) : rng.uniform(0.9, 4.0);
        Vec4 x{st.time, xr, rng.uniform(0.5, 2.6), rng.uniform(0.0, 6.2)};
        CHECK(worst_residual(ext, st, x) < 1e-6);
        if (cb.an == Ansatz::Hedgehog)
          CHECK(norm(gauss_residual(ext.at(xr), x)) < 1e-8);
      }
    }
  }
}

TEST_CASE("field equations hold on evolved trajectories at the scheme order") {
  auto residual_at = [](const Trajectory& tr, double lambda, double t,
                        double xr) {
    TrajectorySampler smp(tr);
    auto src = smp.at(t, xr);
    Vec4 x{t, xr, 1.1, 0.6};
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
      worst = std::max(worst, norm(ym_residual(src, x, a)));
    return std::max(worst, norm(higgs_residual(src, x, lambda)));
  };

  SECTION("cylinder") {
    double res[2];
    for (int lev = 0; lev < 2; ++lev) {
      int n = lev ? 256 : 128;
      auto st = make_state(Chart::Cylinder, Ansatz::Hedgehog, n, 1.0);
      ProfileSpec sp;
      sp.aw = 0.25;
      sp.ah = 0.2;
      sp.apw = 0.1;
      sp.width = 1.1;
      fill_data(st, sp);
      Trajectory tr;
      RunConfig cfg;
      cfg.t_end = 0.64;
      cfg.snapshot_every = 4;
      REQUIRE(run(st, cfg, &tr).status == RunStatus::Ok);
      res[lev] = std::max(residual_at(tr, 1.0, 0.32, 1.0),
                          residual_at(tr, 1.0, 0.32, 1.9));
    }
    INFO("coarse " << res[0] << " fine " << res[1]);
    CHECK(res[1] < 1e-3);
    CHECK(res[0] / res[1] > 8.0);
  }

  SECTION("flat chart with the shrinking domain") {
    double res[2];
    for (int lev = 0; lev < 2; ++lev) {
      int n = lev ? 640 : 320;
      auto st = make_state(Chart::MinkSph, Ansatz::Hedgehog, n, 1.0, 8.0);
      ProfileSpec sp;
      sp.aw = 0.3;
      sp.ah = 0.2;
      sp.apw = 0.1;
      sp.width = 1.0;
      fill_data(st, sp);
      Trajectory tr;
      RunConfig cfg;
      cfg.t_end = 0.6;
      cfg.snapshot_every = 4;
      REQUIRE(run(st, cfg, &tr).status == RunStatus::Ok);
      res[lev] = std::max(residual_at(tr, 1.0, 0.3, 1.2),
                          residual_at(tr, 1.0, 0.3, 2.0));
    }
    INFO("coarse " << res[0] << " fine " << res[1]);
    CHECK(res[1] < 1e-3);
    CHECK(res[0] / res[1] > 8.0);
  }
}

TEST_CASE("total energy of the conformal flow is conserved to the integrator's order") {
  auto st = make_state(Chart::Cylinder, Ansatz::FixedDirection, 512, 1.0);
  ProfileSpec sp;
  sp.ac = 0.25;
  sp.apc = 0.1;
  sp.width = 0.8;
  fill_data(st, sp);
  double e0 = energy_fixed_cyl(st);
  REQUIRE(e0 > 0.0);

  Trajectory tr;
  RunConfig cfg;
  cfg.t_end = 2.0 * kPi;
  cfg.snapshot_every = 64;
  REQUIRE(run(st, cfg, &tr).status == RunStatus::Ok);
  double drift = 0.0;
  for (const auto& fr : tr.frames)
    drift = std::max(drift, std::abs(energy_fixed_cyl(fr) - e0));
  CHECK(drift / e0 < 1e-8);
}

TEST_CASE("momenta integrate the fields between frames") {
  SECTION("scalar mode") {
    auto st = make_state(Chart::Cylinder, Ansatz::FixedDirection, 512, 1.0);
    ProfileSpec sp;
    sp.ac = 0.25;
    sp.apc = 0.1;
    sp.width = 0.8;
    fill_data(st, sp);
    Trajectory tr;
    RunConfig cfg;
    cfg.t_end = 2.0 * kPi;
    cfg.snapshot_every = 8;
    REQUIRE(run(st, cfg, &tr).status == RunStatus::Ok);
    for (int node : {0, 57, 200}) {
      double lhs = tr.frames.back().c[node] - tr.frames.front().c[node];
      double rhs = time_integral(tr, &EquivariantState::pc, node);
      CHECK(std::abs(lhs - rhs) < 1e-8);
    }
  }
  SECTION("gauge and matter profiles") {
    auto st = make_state(Chart::Cylinder, Ansatz::Hedgehog, 128, 1.0);
    ProfileSpec sp;
    sp.aw = 0.2;
    sp.ah = 0.15;
    sp.width = 1.0;
    fill_data(st, sp);
    Trajectory tr;
    RunConfig cfg;
    cfg.t_end = 1.0;
    cfg.snapshot_every = 2;
    REQUIRE(run(st, cfg, &tr).status == RunStatus::Ok);
    for (int node : {33, 64, 101}) {
      double lw = tr.frames.back().w[node] - tr.frames.front().w[node];
      CHECK(std::abs(lw - time_integral(tr, &EquivariantState::pw, node)) < 1e-8);
      double lh = tr.frames.back().h[node] - tr.frames.front().h[node];
      CHECK(std::abs(lh - time_integral(tr, &EquivariantState::ph, node)) < 1e-8);
    }
  }
}

TEST_CASE("the flow runs backward to its initial data") {
  auto st = make_state(Chart::Cylinder, Ansatz::Hedgehog, 128, 1.0);
  ProfileSpec sp;
  sp.aw = 0.1;
  sp.ah = 0.08;
  sp.width = 1.2;
  fill_data(st, sp);
  auto init = st;

  RunConfig cfg;
  cfg.t_end = 0.5;
  REQUIRE(run(st, cfg).status == RunStatus::Ok);
  for (auto& v : st.pw) v = -v;
  for (auto& v : st.ph) v = -v;
  REQUIRE(run(st, cfg).status == RunStatus::Ok);
  for (auto& v : st.pw) v = -v;
  for (auto& v : st.ph) v = -v;
  CHECK(maxdev(st, init) < 1e-8);
}

TEST_CASE("nested grids converge at fourth order") {
  EquivariantState fin[3];
  int grids[3] = {200, 400, 800};
  for (int lev = 0; lev < 3; ++lev) {
    auto st = make_state(Chart::Cylinder, Ansatz::Hedgehog, grids[lev], 1.0);
    ProfileSpec sp;
    sp.aw = 0.3;
    sp.ah = 0.2;
    sp.width = 1.0;
    fill_data(st, sp);
    RunConfig cfg;
    cfg.t_end = 1.0;
    REQUIRE(run(st, cfg).status == RunStatus::Ok);
    fin[lev] = st;
  }
  auto diff = [](const EquivariantState& a, const EquivariantState& b) {
    detail::ArrayPair ap[4];
    int na = detail::active_pairs(a.ansatz, ap);
    double m = 0.0;
    for (int q = 0; q < na; ++q) {
      const auto& x = a.*(ap[q].s);
      const auto& y = b.*(ap[q].s);
      for (int i = 0; i < int(x.size()); ++i)
        m = std::max(m, std::abs(x[i] - y[2 * i]));
    }
    return m;
  };
  double e1 = diff(fin[0], fin[1]);
  double e2 = diff(fin[1], fin[2]);
  double order = std::log2(e1 / e2);
  INFO("e1 " << e1 << " e2 " << e2 << " order " << order);
  CHECK(order > 3.8);
}

TEST_CASE("vacuum is a fixed point on both backgrounds") {
  for (Chart bg : {Chart::Cylinder, Chart::MinkSph}) {
    for (Ansatz an : {Ansatz::Hedgehog, Ansatz::FixedDirection}) {
      auto st = make_state(bg, an, 64, 1.0, bg == Chart::MinkSph ? 6.0 : 0.0);
      auto init = st;
      RunConfig cfg;
      cfg.t_end = 1.0;
      cfg.sigma = 0.05;  // dissipation of a constant is identically zero
      REQUIRE(run(st, cfg).status == RunStatus::Ok);
      CHECK(maxdev(st, init) < 1e-15);
    }
  }
}

TEST_CASE("malformed evolution requests are rejected") {
  CHECK_THROWS_AS(make_state(Chart::Cylinder, Ansatz::Hedgehog, 63, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_state(Chart::Cylinder, Ansatz::Hedgehog, 8, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_state(Chart::MinkSph, Ansatz::Hedgehog, 64, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_state(Chart::DeSitter, Ansatz::Hedgehog, 64, 0.0),
                  std::invalid_argument);

  auto st = make_state(Chart::Cylinder, Ansatz::FixedDirection, 64, 0.0);
  CHECK_THROWS_AS(step(st, 0.3 * st.dx()), std::invalid_argument);
  CHECK_THROWS_AS(step(st, 0.1 * st.dx(), 0.2), std::invalid_argument);

  RunConfig bad;
  bad.dt = 0.37;
  bad.t_end = 1.0;
  CHECK_THROWS_AS(run(st, bad), std::invalid_argument);

  ProfileSpec cm;
  cm.family = ProfileSpec::Family::Constant;
  auto hh = make_state(Chart::Cylinder, Ansatz::Hedgehog, 64, 0.0);
  CHECK_THROWS_AS(fill_data(hh, cm), std::invalid_argument);
}

TEST_CASE("a runaway mode aborts with a located report") {
  auto st = make_state(Chart::Cylinder, Ansatz::FixedDirection, 64, -1.0);
  ProfileSpec sp;
  sp.family = ProfileSpec::Family::Constant;
  sp.ac = 2.0;
  fill_data(st, sp);
  RunConfig cfg;
  cfg.t_end = 20.0;
  auto res = run(st, cfg);
  REQUIRE(res.status == RunStatus::NonFinite);
  CHECK(res.time > 0.0);
  CHECK(res.time < 20.0);
  CHECK(res.node >= 0);
  CHECK((res.field == "c" || res.field == "pc"));
}

TEST_CASE("the flat-chart run stops once the shrinking domain is exhausted") {
  auto st = make_state(Chart::MinkSph, Ansatz::Hedgehog, 320, 0.0, 8.0);
  ProfileSpec sp;
  sp.aw = 0.1;
  sp.width = 0.8;
  fill_data(st, sp);
  RunConfig cfg;
  cfg.t_end = 6.0;
  auto res = run(st, cfg);
  REQUIRE(res.status == RunStatus::DomainExhausted);
  CHECK(res.time < 6.0);
}
