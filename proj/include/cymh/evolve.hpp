#pragma once

// Method-of-lines evolution of the equivariant reductions. States live on a
// uniform grid including both endpoints: [0, rmax] on the flat spherical
// chart, [0, pi] on the cylinder. Fourth-order centred stencils with parity
// ghosts at the axis (both poles on the cylinder), classic RK4 under a
// quarter-grid Courant bound, optional sixth-order Kreiss-Oliger dissipation.
// Everything is plain double arithmetic in a fixed order, so repeated runs
// are bit-for-bit identical.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fields.hpp"
#include "stencil.hpp"

namespace cymh {

inline constexpr double kCourantBound = 0.25;

// Hedgehog states carry (w, pw, h, ph); fixed-direction states carry (c, pc).
// On the flat chart `live` is the last evolved node. The outer region is
// frozen, and runs shrink the live bound at twice light speed, so compactly
// supported data never feels the artificial boundary: the frozen nodes stay
// at their (vacuum) initial values, which is exactly what stencils near the
// live edge should read.
struct EquivariantState {
  Chart background = Chart::Cylinder;
  Ansatz ansatz = Ansatz::Hedgehog;
  double lambda = 0.0;
  double time = 0.0;
  double xmax = kPi;
  int live = 0;
  std::vector<double> w, pw, h, ph;
  std::vector<double> c, pc;

  int n() const {
    return int((ansatz == Ansatz::Hedgehog ? w : c).size()) - 1;
  }
  double dx() const { return xmax / n(); }
};

inline EquivariantState make_state(Chart background, Ansatz ansatz, int n,
                                   double lambda, double xmax = 0.0) {
  if (background != Chart::MinkSph && background != Chart::Cylinder)
    throw std::invalid_argument("evolution backgrounds are MinkSph and Cylinder");
  if (n < 16 || n % 2 != 0)
    throw std::invalid_argument("interval count must be even and at least 16");
  EquivariantState st;
  st.background = background;
  st.ansatz = ansatz;
  st.lambda = lambda;
  if (background == Chart::Cylinder) {
    st.xmax = kPi;
  } else {
    if (!(xmax > 0.0))
      throw std::invalid_argument("flat-chart states need a positive outer radius");
    st.xmax = xmax;
  }
  int m = n + 1;
  if (ansatz == Ansatz::Hedgehog) {
    st.w.assign(m, 1.0);
    st.pw.assign(m, 0.0);
    st.h.assign(m, 0.0);
    st.ph.assign(m, 0.0);
  } else {
    st.c.assign(m, 0.0);
    st.pc.assign(m, 0.0);
  }
  st.live = background == Chart::Cylinder ? n : n - 3;
  return st;
}

struct StateSlope {
  std::vector<double> w, pw, h, ph, c, pc;
};

namespace detail {

struct ArrayPair {
  std::vector<double> EquivariantState::*s;
  std::vector<double> StateSlope::*k;
  const char* name;
};

inline int active_pairs(Ansatz an, ArrayPair out[4]) {
  if (an == Ansatz::Hedgehog) {
    out[0] = {&EquivariantState::w, &StateSlope::w, "w"};
    out[1] = {&EquivariantState::pw, &StateSlope::pw, "pw"};
    out[2] = {&EquivariantState::h, &StateSlope::h, "h"};
    out[3] = {&EquivariantState::ph, &StateSlope::ph, "ph"};
    return 4;
  }
  out[0] = {&EquivariantState::c, &StateSlope::c, "c"};
  out[1] = {&EquivariantState::pc, &StateSlope::pc, "pc"};
  return 2;
}

// Ghosted access. The left end mirrors with the field parity; the right end
// mirrors on the cylinder and reads the stored (frozen) value on the flat
// chart, where indices beyond the array only occur for reads, never updates.
struct Ghosted {
  const std::vector<double>* f;
  int i, n;
  double par;
  bool mirror_right;

  double at(int k) const {
    int j = i + k;
    if (j < 0) return par * (*f)[-j];
    if (j > n) return mirror_right ? par * (*f)[2 * n - j] : (*f)[n];
    return (*f)[j];
  }
  double d1(double inv_dx) const {
    return (at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2)) * inv_dx / 12.0;
  }
  double d2(double inv_dx) const {
    return (-at(-2) + 16.0 * at(-1) - 30.0 * at(0) + 16.0 * at(1) - at(2)) *
           inv_dx * inv_dx / 12.0;
  }
  double ko(double inv_dx, double sigma) const {
    double d6 = at(-3) - 6.0 * at(-2) + 15.0 * at(-1) - 20.0 * at(0) +
                15.0 * at(1) - 6.0 * at(2) + at(3);
    return -(sigma * inv_dx / 64.0) * d6;
  }
};

}  // namespace detail

// Right side of the reduced first-order system. Pole nodes are pinned for
// the hedgehog profiles (w = 1, h = 0 with vanishing slopes); the
// fixed-direction mode is free at the poles and uses the regular limit of
// the radial operator there. Dissipation, when requested, is added to every
// evolved slope.
inline void reduced_rhs_into(const EquivariantState& st, StateSlope& out,
                             double sigma = 0.0) {
  const int n = st.n();
  const double dx = st.dx();
  const double inv = 1.0 / dx;
  const double s = kInvSqrt2;
  const bool cyl = st.background == Chart::Cylinder;
  const double mass = cyl ? 1.0 : 0.0;
  const int m = n + 1;

  if (st.ansatz == Ansatz::Hedgehog) {
    out.w.assign(m, 0.0);
    out.pw.assign(m, 0.0);
    out.h.assign(m, 0.0);
    out.ph.assign(m, 0.0);
    const int hi = cyl ? n - 1 : std::min(st.live, n - 3);
    for (int i = 1; i <= hi; ++i) {
      double x = i * dx;
      double rho = cyl ? std::sin(x) : x;
      double cot2 = cyl ? 2.0 * std::cos(x) / rho : 2.0 / x;
      double rr = rho * rho;
      detail::Ghosted Gw{&st.w, i, n, +1.0, cyl};
      detail::Ghosted Gh{&st.h, i, n, -1.0, cyl};
      double W = 1.0 - st.w[i];
      double A1 = 1.0 - s * W;
      double gW = (2.0 - s * W) * W;
      double hv = st.h[i];
      out.w[i] = st.pw[i];
      out.pw[i] = Gw.d2(inv) + A1 * gW / rr - s * A1 * hv * hv;
      out.h[i] = st.ph[i];
      out.ph[i] = Gh.d2(inv) + cot2 * Gh.d1(inv) - 2.0 * hv * A1 * A1 / rr -
                  mass * hv - st.lambda * hv * hv * hv;
      if (sigma > 0.0) {
        detail::Ghosted Gpw{&st.pw, i, n, +1.0, cyl};
        detail::Ghosted Gph{&st.ph, i, n, -1.0, cyl};
        out.w[i] += Gw.ko(inv, sigma);
        out.pw[i] += Gpw.ko(inv, sigma);
        out.h[i] += Gh.ko(inv, sigma);
        out.ph[i] += Gph.ko(inv, sigma);
      }
    }
    return;
  }

  out.c.assign(m, 0.0);
  out.pc.assign(m, 0.0);
  const int hi = cyl ? n : std::min(st.live, n - 3);
  for (int i = 0; i <= hi; ++i) {
    double cv = st.c[i];
    detail::Ghosted Gc{&st.c, i, n, +1.0, cyl};
    double rc;
    if (i == 0 || (cyl && i == n)) {
      rc = 3.0 * Gc.d2(inv);
    } else {
      double x = i * dx;
      double cot2 = cyl ? 2.0 * std::cos(x) / std::sin(x) : 2.0 / x;
      rc = Gc.d2(inv) + cot2 * Gc.d1(inv);
    }
    rc -= mass * cv + st.lambda * cv * cv * cv;
    out.c[i] = st.pc[i];
    out.pc[i] = rc;
    if (sigma > 0.0) {
      detail::Ghosted Gpc{&st.pc, i, n, +1.0, cyl};
      out.c[i] += Gc.ko(inv, sigma);
      out.pc[i] += Gpc.ko(inv, sigma);
    }
  }
}

inline StateSlope reduced_rhs(const EquivariantState& st) {
  StateSlope k;
  reduced_rhs_into(st, k, 0.0);
  return k;
}

namespace detail {

inline void advance(const EquivariantState& base, double a, const StateSlope& k,
                    EquivariantState& out) {
  out.background = base.background;
  out.ansatz = base.ansatz;
  out.lambda = base.lambda;
  out.time = base.time;
  out.xmax = base.xmax;
  out.live = base.live;
  ArrayPair ap[4];
  int na = active_pairs(base.ansatz, ap);
  for (int q = 0; q < na; ++q) {
    const std::vector<double>& b = base.*(ap[q].s);
    const std::vector<double>& kv = k.*(ap[q].k);
    std::vector<double>& o = out.*(ap[q].s);
    o.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) o[i] = b[i] + a * kv[i];
  }
}

}  // namespace detail

inline void step(EquivariantState& st, double dt, double sigma = 0.0) {
  const double dx = st.dx();
  if (!(dt > 0.0) || dt > kCourantBound * dx * (1.0 + 1e-12))
    throw std::invalid_argument("time step exceeds the quarter-grid Courant bound");
  if (sigma < 0.0 || sigma > 0.1)
    throw std::invalid_argument("dissipation strength must lie in [0, 0.1]");
  StateSlope k1, k2, k3, k4;
  EquivariantState tmp;
  reduced_rhs_into(st, k1, sigma);
  detail::advance(st, 0.5 * dt, k1, tmp);
  reduced_rhs_into(tmp, k2, sigma);
  detail::advance(st, 0.5 * dt, k2, tmp);
  reduced_rhs_into(tmp, k3, sigma);
  detail::advance(st, dt, k3, tmp);
  reduced_rhs_into(tmp, k4, sigma);
  detail::ArrayPair ap[4];
  int na = detail::active_pairs(st.ansatz, ap);
  double c6 = dt / 6.0;
  for (int q = 0; q < na; ++q) {
    std::vector<double>& y = st.*(ap[q].s);
    const std::vector<double>& a1 = k1.*(ap[q].k);
    const std::vector<double>& a2 = k2.*(ap[q].k);
    const std::vector<double>& a3 = k3.*(ap[q].k);
    const std::vector<double>& a4 = k4.*(ap[q].k);
    for (size_t i = 0; i < y.size(); ++i)
      y[i] += c6 * (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i]);
  }
  st.time += dt;
}

enum class RunStatus { Ok, NonFinite, DomainExhausted };

struct RunResult {
  RunStatus status = RunStatus::Ok;
  double time = 0.0;
  int node = -1;
  std::string field;
  long steps = 0;
  double dt = 0.0;
};

struct RunConfig {
  double cfl = kCourantBound;  // used when dt == 0
  double dt = 0.0;             // explicit step size; must divide t_end
  double t_end = 0.0;
  double sigma = 0.0;
  int snapshot_every = 0;  // store a frame every k steps; 0 keeps first and last
};

struct Trajectory {
  double t0 = 0.0;
  double dt = 0.0;  // frame spacing
  std::vector<EquivariantState> frames;
};

// Advances st to st.time + t_end. Frames are appended to traj (if given) and
// handed to sink together with the step index. A non-finite value aborts the
// run and reports when and where it appeared.
inline RunResult run(EquivariantState& st, const RunConfig& cfg,
                     Trajectory* traj = nullptr,
                     const std::function<void(const EquivariantState&, long)>&
                         sink = {}) {
  if (!(cfg.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  const int n = st.n();
  const double dx = st.dx();
  long steps;
  double dt;
  if (cfg.dt > 0.0) {
    dt = cfg.dt;
    steps = std::lround(cfg.t_end / dt);
    if (steps < 1 ||
        std::abs(steps * dt - cfg.t_end) > 1e-9 * std::max(1.0, cfg.t_end))
      throw std::invalid_argument("explicit dt must divide t_end");
  } else {
    double cfl = std::min(cfg.cfl, kCourantBound);
    if (!(cfl > 0.0))
      throw std::invalid_argument("courant factor must be positive");
    steps = (long)std::ceil(cfg.t_end / (cfl * dx) - 1e-12);
    if (cfg.snapshot_every > 0) {
      long k = cfg.snapshot_every;
      steps = k * ((steps + k - 1) / k);
    }
    dt = cfg.t_end / steps;
  }

  const double t0 = st.time;
  if (traj) {
    traj->frames.clear();
    traj->t0 = t0;
    traj->dt = (cfg.snapshot_every > 0 ? cfg.snapshot_every : steps) * dt;
  }
  auto record = [&](long k) {
    if (traj) traj->frames.push_back(st);
    if (sink) sink(st, k);
  };
  record(0);

  detail::ArrayPair ap[4];
  int na = detail::active_pairs(st.ansatz, ap);
  for (long k = 0; k < steps; ++k) {
    if (st.background == Chart::MinkSph) {
      double elapsed = (k + 1) * dt;
      int bound = n - 3 - (int)std::ceil(2.0 * elapsed / dx - 1e-12);
      st.live = std::min(st.live, bound);
      if (st.live < 8)
        return {RunStatus::DomainExhausted, st.time, st.live, "", k, dt};
    }
    step(st, dt, cfg.sigma);
    st.time = t0 + (k + 1) * dt;
    for (int q = 0; q < na; ++q) {
      const std::vector<double>& y = st.*(ap[q].s);
      for (int i = 0; i <= n; ++i)
        if (!std::isfinite(y[i]))
          return {RunStatus::NonFinite, st.time, i, ap[q].name, k + 1, dt};
    }
    bool last = k + 1 == steps;
    if (cfg.snapshot_every > 0 ? (k + 1) % cfg.snapshot_every == 0 : last)
      record(k + 1);
  }
  return {RunStatus::Ok, st.time, -1, "", steps, dt};
}

}  // namespace cymh
