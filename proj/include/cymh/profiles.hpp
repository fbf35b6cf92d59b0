#pragma once

// Closed-form initial data families. Each family fixes the parity and pole
// behaviour required by the ansatz: w - 1 and pw carry an even double-zero
// factor at the poles, h and ph an odd simple zero, the fixed-direction mode
// is even and free. Runs are reproducible from the family parameters alone.

#include <cmath>
#include <stdexcept>

#include "evolve.hpp"

namespace cymh {

struct ProfileSpec {
  enum class Family { Gaussian, Bump, Constant };
  Family family = Family::Gaussian;
  double aw = 0.0, ah = 0.0, ac = 0.0;     // field amplitudes
  double apw = 0.0, aph = 0.0, apc = 0.0;  // momentum amplitudes
  double width = 1.0;  // gaussian width, or the bump support radius
};

namespace detail {

// Scalar envelope at coordinate x. The cylinder gaussian is the
// exponential-of-cosine shape, smooth across both poles; the bump is the
// sixth power of a compactly supported quadratic, C^5 at its edge.
inline double envelope(ProfileSpec::Family fam, bool cyl, double x,
                       double width) {
  switch (fam) {
    case ProfileSpec::Family::Gaussian:
      if (cyl) return std::exp((std::cos(x) - 1.0) / (width * width));
      return std::exp(-(x / width) * (x / width));
    case ProfileSpec::Family::Bump: {
      double q = x / width;
      if (q >= 1.0) return 0.0;
      double u = 1.0 - q * q;
      double u2 = u * u;
      return u2 * u2 * u2;
    }
    case ProfileSpec::Family::Constant:
      return 1.0;
  }
  return 0.0;
}

}  // namespace detail

// Adds the family on top of whatever the state already holds.
inline void add_data(EquivariantState& st, const ProfileSpec& sp) {
  const bool cyl = st.background == Chart::Cylinder;
  if (sp.family == ProfileSpec::Family::Bump && cyl && sp.width >= kPi)
    throw std::invalid_argument("cylinder bump must be supported inside (0, pi)");
  if (sp.family == ProfileSpec::Family::Constant &&
      st.ansatz != Ansatz::FixedDirection)
    throw std::invalid_argument("constant modes exist only for the fixed-direction ansatz");
  const int n = st.n();
  const double dx = st.dx();
  for (int i = 0; i <= n; ++i) {
    double x = i * dx;
    double env = detail::envelope(sp.family, cyl, x, sp.width);
    if (st.ansatz == Ansatz::FixedDirection) {
      st.c[i] += sp.ac * env;
      st.pc[i] += sp.apc * env;
      continue;
    }
    double q = cyl ? std::sin(x) : x / sp.width;
    double sw = q * q * env;
    double sh = q * env;
    st.w[i] += sp.aw * sw;
    st.pw[i] += sp.apw * sw;
    st.h[i] += sp.ah * sh;
    st.ph[i] += sp.aph * sh;
  }
}

inline void fill_data(EquivariantState& st, const ProfileSpec& sp) {
  const int n = st.n();
  if (st.ansatz == Ansatz::Hedgehog) {
    st.w.assign(n + 1, 1.0);
    st.pw.assign(n + 1, 0.0);
    st.h.assign(n + 1, 0.0);
    st.ph.assign(n + 1, 0.0);
  } else {
    st.c.assign(n + 1, 0.0);
    st.pc.assign(n + 1, 0.0);
  }
  add_data(st, sp);
}

}  // namespace cymh
