#pragma once

// Space-time interpolation of stored states. Every evaluation goes through
// an anchored 5x5 Lagrange patch (quartic in the radial coordinate, quartic
// in frame time), chosen once per base point: finite-difference probes
// around that point then differentiate a single smooth polynomial instead of
// straddling interpolation cells.

#include <cmath>
#include <stdexcept>

#include "evolve.hpp"

namespace cymh {

namespace detail {

inline int clampi(int v, int lo, int hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

// One radial patch over nodes [jx-2, jx+2] of a grid array.
inline double patch_eval(const std::vector<double>& arr, int jx, double dx,
                         double x, bool ddx) {
  double wx[5];
  double xi = (x - jx * dx) / dx;
  if (ddx)
    lagrange5_d1(xi, wx);
  else
    lagrange5(xi, wx);
  double acc = 0.0;
  for (int k = 0; k < 5; ++k) acc += wx[k] * arr[jx - 2 + k];
  return ddx ? acc / dx : acc;
}

}  // namespace detail

class TrajectorySampler {
 public:
  explicit TrajectorySampler(const Trajectory& tr) : tr_(&tr) {
    if (tr.frames.size() < 5)
      throw std::invalid_argument("sampling needs at least five frames");
    if (!(tr.dt > 0.0))
      throw std::invalid_argument("frame spacing must be positive");
  }

  const EquivariantState& meta() const { return tr_->frames.front(); }

  class Anchored {
   public:
    ProfilePoint profile(double t, double x) const {
      ProfilePoint p;
      p.w = value(&EquivariantState::w, t, x, false);
      p.pw = value(&EquivariantState::pw, t, x, false);
      p.dw = value(&EquivariantState::w, t, x, true);
      p.h = value(&EquivariantState::h, t, x, false);
      p.ph = value(&EquivariantState::ph, t, x, false);
      p.dh = value(&EquivariantState::h, t, x, true);
      return p;
    }

    void scalar(double t, double x, double* c, double* pc, double* dc) const {
      *c = value(&EquivariantState::c, t, x, false);
      *pc = value(&EquivariantState::pc, t, x, false);
      *dc = value(&EquivariantState::c, t, x, true);
    }

    // p = (t, radial, theta, phi) in the background chart.
    PointFields operator()(const Vec4& p) const {
      const EquivariantState& s0 = tr_->frames.front();
      if (s0.ansatz == Ansatz::Hedgehog)
        return hedgehog_point(s0.background, p, profile(p[0], p[1]));
      double c, pc, dc;
      scalar(p[0], p[1], &c, &pc, &dc);
      return fixed_direction_point(s0.background, p, c, pc, dc);
    }

    // p = (t, x, y, z); flat backgrounds only.
    PointFields cart(const Vec4& p) const {
      const EquivariantState& s0 = tr_->frames.front();
      double r = std::sqrt(p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
      if (s0.ansatz == Ansatz::Hedgehog)
        return hedgehog_cart_point(p, profile(p[0], r));
      double c, pc, dc;
      scalar(p[0], r, &c, &pc, &dc);
      PointFields f;
      f.chart = Chart::MinkCart;
      f.x = p;
      f.phi = {0.0, 0.0, c};
      f.Dphi[0] = {0.0, 0.0, pc};
      for (int i = 0; i < 3; ++i) f.Dphi[1 + i] = {0.0, 0.0, dc * p[1 + i] / r};
      return f;
    }

   private:
    friend class TrajectorySampler;
    const Trajectory* tr_;
    int jt_, jx_;

    double value(std::vector<double> EquivariantState::*a, double t, double x,
                 bool ddx) const {
      const auto& fr = tr_->frames;
      double dxg = fr.front().dx();
      double wt[5];
      lagrange5((t - (tr_->t0 + jt_ * tr_->dt)) / tr_->dt, wt);
      double acc = 0.0;
      for (int m = 0; m < 5; ++m)
        acc += wt[m] *
               detail::patch_eval(fr[jt_ - 2 + m].*a, jx_, dxg, x, ddx);
      return acc;
    }
  };

  Anchored at(double t, double x) const {
    const EquivariantState& s0 = tr_->frames.front();
    Anchored a;
    a.tr_ = tr_;
    int mfr = (int)tr_->frames.size();
    a.jt_ = detail::clampi((int)std::llround((t - tr_->t0) / tr_->dt), 2,
                           mfr - 3);
    a.jx_ = detail::clampi((int)std::llround(x / s0.dx()), 2, s0.n() - 2);
    return a;
  }

  PointFields fields(const Vec4& p) const { return at(p[0], p[1])(p); }
  PointFields fields_cart(const Vec4& p) const {
    double r = std::sqrt(p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
    return at(p[0], r).cart(p);
  }

 private:
  const Trajectory* tr_;
};

// Linear extension of a single state along its own reduced flow. Probing the
// covariant residual oracles at the state's time then isolates the spatial
// truncation of the reduced right side: the time legs of the oracles see the
// exact slope arrays.
class StateExtension {
 public:
  explicit StateExtension(const EquivariantState& st)
      : st_(&st), k_(reduced_rhs(st)) {}

  class Anchored {
   public:
    PointFields operator()(const Vec4& p) const {
      if (st_->ansatz == Ansatz::Hedgehog) {
        ProfilePoint q;
        q.w = value(&EquivariantState::w, &StateSlope::w, p[0], p[1], false);
        q.pw = value(&EquivariantState::pw, &StateSlope::pw, p[0], p[1], false);
        q.dw = value(&EquivariantState::w, &StateSlope::w, p[0], p[1], true);
        q.h = value(&EquivariantState::h, &StateSlope::h, p[0], p[1], false);
        q.ph = value(&EquivariantState::ph, &StateSlope::ph, p[0], p[1], false);
        q.dh = value(&EquivariantState::h, &StateSlope::h, p[0], p[1], true);
        return hedgehog_point(st_->background, p, q);
      }
      double c = value(&EquivariantState::c, &StateSlope::c, p[0], p[1], false);
      double pc =
          value(&EquivariantState::pc, &StateSlope::pc, p[0], p[1], false);
      double dc = value(&EquivariantState::c, &StateSlope::c, p[0], p[1], true);
      return fixed_direction_point(st_->background, p, c, pc, dc);
    }

   private:
    friend class StateExtension;
    const EquivariantState* st_;
    const StateSlope* k_;
    int jx_;

    double value(std::vector<double> EquivariantState::*a,
                 std::vector<double> StateSlope::*ka, double t, double x,
                 bool ddx) const {
      double dxg = st_->dx();
      double tau = t - st_->time;
      return detail::patch_eval(st_->*a, jx_, dxg, x, ddx) +
             tau * detail::patch_eval((*k_).*ka, jx_, dxg, x, ddx);
    }
  };

  Anchored at(double x) const {
    Anchored a;
    a.st_ = st_;
    a.k_ = &k_;
    a.jx_ = detail::clampi((int)std::llround(x / st_->dx()), 2, st_->n() - 2);
    return a;
  }

  const StateSlope& slope() const { return k_; }

 private:
  const EquivariantState* st_;
  StateSlope k_;
};

}  // namespace cymh
