#pragma once

#include <cmath>

#include "horolet/types.hpp"

namespace horolet {

// Gauss-Legendre on [-1,1] by Newton iteration from the Chebyshev-angle
// initial guess; converges to machine precision in < 10 steps.
inline Grid1 gauss_legendre(int n) {
  if (n < 1) throw ConfigError("gauss_legendre: n must be positive");
  Grid1 g;
  g.nodes.resize(n);
  g.weights.resize(n);
  g.measure_tag = "legendre[-1,1]";
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (n == 1) { p1 = x; }
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double pn = (n == 1) ? x : p1;
      double pnm1 = (n == 1) ? 1.0 : p0;
      pp = n * (x * pn - pnm1) / (x * x - 1.0);
      double dx = pn / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    g.nodes[n - 1 - i] = x;
    g.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return g;
}

inline Grid1 gauss_legendre(int n, double a, double b) {
  Grid1 g = gauss_legendre(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < g.size(); ++i) {
    g.nodes[i] = mid + half * g.nodes[i];
    g.weights[i] *= half;
  }
  g.measure_tag = "legendre";
  return g;
}

// composite midpoint rule; exact weight b-a in total
inline Grid1 midpoint(int n, double a, double b) {
  if (n < 1) throw ConfigError("midpoint: n must be positive");
  Grid1 g;
  g.nodes.resize(n);
  g.weights.resize(n);
  g.measure_tag = "midpoint";
  double h = (b - a) / n;
  for (int i = 0; i < n; ++i) {
    g.nodes[i] = a + (i + 0.5) * h;
    g.weights[i] = h;
  }
  return g;
}

inline Grid1 trapezoid(int n, double a, double b) {
  if (n < 2) throw ConfigError("trapezoid: need at least 2 nodes");
  Grid1 g;
  g.nodes.resize(n);
  g.weights.resize(n);
  g.measure_tag = "trapezoid";
  double h = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) {
    g.nodes[i] = a + i * h;
    g.weights[i] = (i == 0 || i == n - 1) ? 0.5 * h : h;
  }
  return g;
}

// scale grid for the parameter domain: Gauss-Legendre on [a_min, a_max]
// mirrored to the negative half-axis, skipping the |a| < a_min slab around
// the singular origin
inline Grid1 mirrored_scale_grid(int n_per_side, double a_min, double a_max) {
  if (a_min <= 0 || a_max <= a_min)
    throw ConfigError("scale grid: need 0 < a_min < a_max");
  Grid1 half = gauss_legendre(n_per_side, a_min, a_max);
  Grid1 g;
  g.nodes.resize(2 * n_per_side);
  g.weights.resize(2 * n_per_side);
  g.measure_tag = "mirrored_legendre";
  for (int i = 0; i < n_per_side; ++i) {
    g.nodes[i] = -half.nodes[n_per_side - 1 - i];
    g.weights[i] = half.weights[n_per_side - 1 - i];
    g.nodes[n_per_side + i] = half.nodes[i];
    g.weights[n_per_side + i] = half.weights[i];
  }
  return g;
}

// linear interpolation with zero extension outside the table
inline double interp_linear(const VecD& xs, const VecD& ys, double x) {
  int n = static_cast<int>(xs.size());
  if (n == 0 || x < xs[0] || x > xs[n - 1]) return 0.0;
  int lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    if (xs[mid] <= x)
      lo = mid;
    else
      hi = mid;
  }
  double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

}  // namespace horolet
