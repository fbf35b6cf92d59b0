#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cymh/algebra.hpp"

namespace cymh {

struct QuadNode {
  double x;
  double w;
};

// Gauss-Legendre rule on [-1, 1], nodes ascending.
inline std::vector<QuadNode> gauss_legendre(int n) {
  std::vector<QuadNode> q(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p1 = 1.0, dp = 0.0;
    for (int iter = 0; iter < 64; ++iter) {
      p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
      }
      dp = n * (x * p1 - p2) / (x * x - 1.0);
      double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q[i] = {-x, w};
    q[n - 1 - i] = {x, w};
  }
  return q;
}

template <class F>
double integrate_gl(F&& f, double a, double b, int n = 16) {
  auto q = gauss_legendre(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (const auto& node : q) s += node.w * f(mid + half * node.x);
  return half * s;
}

template <class F>
double integrate_gl_panels(F&& f, double a, double b, int panels, int n = 8) {
  double s = 0.0, h = (b - a) / panels;
  auto q = gauss_legendre(n);
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * h, half = 0.5 * h;
    for (const auto& node : q) s += node.w * f(mid + half * node.x);
  }
  return 0.5 * h * s;
}

// Composite Simpson over uniformly spaced samples; needs an odd count.
inline double simpson(const std::vector<double>& f, double dx) {
  std::size_t n = f.size();
  double s = f[0] + f[n - 1];
  for (std::size_t i = 1; i + 1 < n; ++i) s += f[i] * (i % 2 ? 4.0 : 2.0);
  return s * dx / 3.0;
}

}  // namespace cymh
