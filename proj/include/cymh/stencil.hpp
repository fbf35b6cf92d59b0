#pragma once

// Fourth-order centred finite differences and quintic interpolation pieces.
// Pointer arguments reference the centre sample; callers guarantee the
// needed neighbours exist (ghost cells or interior placement).

namespace cymh {

inline double d1_o4(const double* f, double inv_dx) {
  return (f[-2] - 8.0 * f[-1] + 8.0 * f[1] - f[2]) * inv_dx / 12.0;
}

inline double d2_o4(const double* f, double inv_dx) {
  return (-f[-2] + 16.0 * f[-1] - 30.0 * f[0] + 16.0 * f[1] - f[2]) *
         inv_dx * inv_dx / 12.0;
}

// Sixth-order Kreiss-Oliger dissipation contribution to du/dt.
inline double ko6(const double* f, double inv_dx, double sigma) {
  double d6 = f[-3] - 6.0 * f[-2] + 15.0 * f[-1] - 20.0 * f[0] +
              15.0 * f[1] - 6.0 * f[2] + f[3];
  return -(sigma * inv_dx / 64.0) * d6;
}

namespace detail {
inline constexpr double kNode5[5] = {-2.0, -1.0, 0.0, 1.0, 2.0};
}

// Weights of the degree-4 Lagrange interpolant through nodes -2..2 at
// offset xi (grid units); and of its first and second derivatives.
inline void lagrange5(double xi, double w[5]) {
  for (int k = 0; k < 5; ++k) {
    double p = 1.0;
    for (int j = 0; j < 5; ++j)
      if (j != k) p *= (xi - detail::kNode5[j]) / (detail::kNode5[k] - detail::kNode5[j]);
    w[k] = p;
  }
}

inline void lagrange5_d1(double xi, double w[5]) {
  for (int k = 0; k < 5; ++k) {
    double s = 0.0;
    for (int m = 0; m < 5; ++m) {
      if (m == k) continue;
      double p = 1.0;
      for (int j = 0; j < 5; ++j)
        if (j != k && j != m) p *= (xi - detail::kNode5[j]);
      s += p;
    }
    double denom = 1.0;
    for (int j = 0; j < 5; ++j)
      if (j != k) denom *= (detail::kNode5[k] - detail::kNode5[j]);
    w[k] = s / denom;
  }
}

inline void lagrange5_d2(double xi, double w[5]) {
  for (int k = 0; k < 5; ++k) {
    double s = 0.0;
    for (int m = 0; m < 5; ++m) {
      if (m == k) continue;
      for (int l = 0; l < 5; ++l) {
        if (l == k || l == m) continue;
        double p = 1.0;
        for (int j = 0; j < 5; ++j)
          if (j != k && j != m && j != l) p *= (xi - detail::kNode5[j]);
        s += p;
      }
    }
    double denom = 1.0;
    for (int j = 0; j < 5; ++j)
      if (j != k) denom *= (detail::kNode5[k] - detail::kNode5[j]);
    w[k] = s / denom;
  }
}

}  // namespace cymh
