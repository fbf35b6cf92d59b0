#pragma once

// Moving data and solutions between the flat spherical chart and the
// cylinder. Data maps act on the t = 0 slice, where tau = 0, zeta = 2
// arctan r, and the conformal factor is 1/rplus_sq: profile values are
// interpolated first (quartic Lagrange) and then weighted by the conformal
// powers of their slots. Solution pullbacks wrap a cylinder trajectory
// sampler so flat-chart and de Sitter probes see fields at the image point.

#include <cmath>
#include <stdexcept>

#include "sampler.hpp"

namespace cymh {

namespace detail {

// Quartic interpolation of one state array at coordinate x; beyond the last
// usable patch the array is taken to sit at its vacuum value.
inline double sample_array(const std::vector<double>& arr, double dx, double x,
                           double vac) {
  int n = int(arr.size()) - 1;
  if (x >= (n - 2) * dx) {
    int jc = n - 2;
    if (x > n * dx) return vac;
    return patch_eval(arr, jc, dx, x, false);
  }
  int jc = clampi((int)std::llround(x / dx), 2, n - 2);
  return patch_eval(arr, jc, dx, x, false);
}

}  // namespace detail

// Initial data on the flat chart to initial data on the cylinder. The
// weights are the conformal powers of each slot: the connection profile is
// invariant, momenta and the scalar pick up rplus_sq once, the scalar
// momentum twice.
inline EquivariantState data_to_cylinder(const EquivariantState& mink,
                                         int n_out) {
  if (mink.background != Chart::MinkSph)
    throw std::invalid_argument("data_to_cylinder expects a flat-chart state");
  auto out = make_state(Chart::Cylinder, mink.ansatz, n_out, mink.lambda);
  const double dxm = mink.dx();
  const double dz = out.dx();
  for (int j = 0; j <= n_out; ++j) {
    double zeta = j * dz;
    if (j == n_out) break;  // the far pole is the vacuum image of r = infinity
    double r = std::tan(0.5 * zeta);
    double w2 = rplus_sq(r);
    if (mink.ansatz == Ansatz::Hedgehog) {
      out.w[j] = detail::sample_array(mink.w, dxm, r, 1.0);
      out.pw[j] = w2 * detail::sample_array(mink.pw, dxm, r, 0.0);
      out.h[j] = w2 * detail::sample_array(mink.h, dxm, r, 0.0);
      out.ph[j] = w2 * w2 * detail::sample_array(mink.ph, dxm, r, 0.0);
    } else {
      out.c[j] = w2 * detail::sample_array(mink.c, dxm, r, 0.0);
      out.pc[j] = w2 * w2 * detail::sample_array(mink.pc, dxm, r, 0.0);
    }
  }
  return out;
}

inline EquivariantState data_to_minkowski(const EquivariantState& cyl,
                                          int n_out, double rmax) {
  if (cyl.background != Chart::Cylinder)
    throw std::invalid_argument("data_to_minkowski expects a cylinder state");
  auto out = make_state(Chart::MinkSph, cyl.ansatz, n_out, cyl.lambda, rmax);
  const double dz = cyl.dx();
  const double dxm = out.dx();
  for (int i = 0; i <= n_out; ++i) {
    double r = i * dxm;
    double zeta = 2.0 * std::atan(r);
    double iw2 = 1.0 / rplus_sq(r);
    if (cyl.ansatz == Ansatz::Hedgehog) {
      out.w[i] = detail::sample_array(cyl.w, dz, zeta, 1.0);
      out.pw[i] = iw2 * detail::sample_array(cyl.pw, dz, zeta, 0.0);
      out.h[i] = iw2 * detail::sample_array(cyl.h, dz, zeta, 0.0);
      out.ph[i] = iw2 * iw2 * detail::sample_array(cyl.ph, dz, zeta, 0.0);
    } else {
      out.c[i] = iw2 * detail::sample_array(cyl.c, dz, zeta, 0.0);
      out.pc[i] = iw2 * iw2 * detail::sample_array(cyl.pc, dz, zeta, 0.0);
    }
  }
  return out;
}

// Flat-chart fields of a cylinder trajectory: sample at the image point,
// then pull back with the conformal dictionary. Anchor at the centre of an
// intended probe cluster; nearby evaluations share the frozen patch.
class MinkPullback {
 public:
  explicit MinkPullback(const TrajectorySampler& smp) : smp_(&smp) {
    if (smp.meta().background != Chart::Cylinder)
      throw std::invalid_argument("pullbacks need a cylinder trajectory");
  }

  class Anchored {
   public:
    PointFields operator()(const Vec4& p) const {
      auto q = cyl_from_mink(p[0], p[1]);
      return pull_to_mink(anchor_({q.tau, q.zeta, p[2], p[3]}), p[0], p[1]);
    }

   private:
    friend class MinkPullback;
    TrajectorySampler::Anchored anchor_;
    explicit Anchored(TrajectorySampler::Anchored a) : anchor_(a) {}
  };

  Anchored at(double t, double r) const {
    auto q = cyl_from_mink(t, r);
    return Anchored(smp_->at(q.tau, q.zeta));
  }

  PointFields fields(const Vec4& p) const { return at(p[0], p[1])(p); }

 private:
  const TrajectorySampler* smp_;
};

// de Sitter fields of a cylinder trajectory, alpha = gd^{-1}(tau).
class DeSitterPullback {
 public:
  explicit DeSitterPullback(const TrajectorySampler& smp) : smp_(&smp) {
    if (smp.meta().background != Chart::Cylinder)
      throw std::invalid_argument("pullbacks need a cylinder trajectory");
  }

  class Anchored {
   public:
    PointFields operator()(const Vec4& p) const {
      return cyl_to_ds(anchor_({gudermann(p[0]), p[1], p[2], p[3]}), p[0]);
    }

   private:
    friend class DeSitterPullback;
    TrajectorySampler::Anchored anchor_;
    explicit Anchored(TrajectorySampler::Anchored a) : anchor_(a) {}
  };

  Anchored at(double alpha, double zeta) const {
    return Anchored(smp_->at(gudermann(alpha), zeta));
  }

  PointFields fields(const Vec4& p) const { return at(p[0], p[1])(p); }

 private:
  const TrajectorySampler* smp_;
};

}  // namespace cymh
