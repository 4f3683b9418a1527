#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "horolet/types.hpp"

namespace horolet {

// Lanczos approximation (g = 7, 9 terms), valid for Re z > 0; reflection
// formula otherwise. Relative accuracy ~1e-13 on the tested range.
inline Complex log_gamma(Complex z) {
  static const double coef[9] = {
      0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
      771.32342877765313,   -176.61502916214059, 12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
    return std::log(M_PI) - std::log(std::sin(M_PI * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  Complex x = coef[0];
  for (int i = 1; i < 9; ++i) x += coef[i] / (z + static_cast<double>(i));
  Complex t = z + 7.5;
  return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline Complex log_beta(Complex a, Complex b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

// Acklam's rational approximation of the standard normal quantile,
// |relative error| < 1.15e-9 on (0,1)
inline double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("inverse_normal_cdf: p in (0,1)");
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p > phigh) {
    q = std::sqrt(-2 * std::log(1 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

inline double halton(std::uint64_t index, std::uint64_t base) {
  double f = 1.0, r = 0.0;
  std::uint64_t x = index + 1;
  while (x > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(x % base);
    x /= base;
  }
  return r;
}

// Deterministic RNG: mt19937_64 has a standardized sequence; distributions
// are built here by hand because std::*_distribution is implementation
// defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() {  // in (0,1)
    return (static_cast<double>(eng_() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double normal() { return inverse_normal_cdf(uniform()); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace horolet
