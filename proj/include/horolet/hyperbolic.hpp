#pragma once

#include <cmath>

#include "horolet/special.hpp"
#include "horolet/types.hpp"

namespace horolet {

inline constexpr double kBoundaryCutoff = 1e-9;

template <typename D>
void require_inside_ball(const Eigen::MatrixBase<D>& x) {
  if (x.norm() > 1.0 - kBoundaryCutoff)
    throw DomainError("point on or outside the unit sphere");
}

// cosh^-1(1 + 2|x-y|^2 / ((1-|x|^2)(1-|y|^2))), the ball-model distance
template <typename D1, typename D2>
double poincare_ball_distance(const Eigen::MatrixBase<D1>& x,
                              const Eigen::MatrixBase<D2>& y) {
  require_inside_ball(x);
  require_inside_ball(y);
  double num = 2.0 * (x - y).squaredNorm();
  double den = (1.0 - x.squaredNorm()) * (1.0 - y.squaredNorm());
  return std::acosh(1.0 + num / den);
}

// disk normalization: half the ball-model distance, tanh^-1 form
inline double poincare_disk_distance(Complex z, Complex w) {
  if (std::abs(z) > 1.0 - kBoundaryCutoff || std::abs(w) > 1.0 - kBoundaryCutoff)
    throw DomainError("point on or outside the unit circle");
  return std::atanh(std::abs((z - w) / (1.0 - z * std::conj(w))));
}

template <typename D1, typename D2>
double poincare_distance(const SpaceDescriptor& sp, const Eigen::MatrixBase<D1>& x,
                         const Eigen::MatrixBase<D2>& y) {
  if (sp.model == SpaceModel::poincare_disk_su11)
    return poincare_disk_distance({x[0], x[1]}, {y[0], y[1]});
  return poincare_ball_distance(x, y);
}

// log((1-|x|^2)/|x-u|^2); the su11 disk carries the half normalization
template <typename D1, typename D2>
double composite_distance(const SpaceDescriptor& sp, const Eigen::MatrixBase<D1>& x,
                          const Eigen::MatrixBase<D2>& u) {
  require_inside_ball(x);
  double v = std::log((1.0 - x.squaredNorm()) / (x - u).squaredNorm());
  return sp.model == SpaceModel::poincare_disk_su11 ? 0.5 * v : v;
}

template <typename D1, typename D2>
double poisson_weight(const SpaceDescriptor& sp, const Eigen::MatrixBase<D1>& x,
                      const Eigen::MatrixBase<D2>& u) {
  return std::exp(sp.rho[0] * composite_distance(sp, x, u));
}

// ball-model density of dvol w.r.t. Lebesgue, (2/(1-|x|^2))^m
template <typename D>
double volume_density(const Eigen::MatrixBase<D>& x, int m) {
  require_inside_ball(x);
  return std::pow(2.0 / (1.0 - x.squaredNorm()), m);
}

// density used by the X-quadrature of each model (the su11 disk metric is
// half the ball metric, so its area density is (1/(1-|z|^2))^2)
template <typename D>
double model_volume_density(const SpaceDescriptor& sp, const Eigen::MatrixBase<D>& x) {
  if (sp.model == SpaceModel::euclidean) return 1.0;
  if (sp.model == SpaceModel::poincare_disk_su11) {
    require_inside_ball(x);
    double s = 1.0 - x.squaredNorm();
    return 1.0 / (s * s);
  }
  return volume_density(x, sp.m);
}

inline double double_factorial(int n) {
  double v = 1.0;
  for (int k = n; k > 1; k -= 2) v *= k;
  return v;
}

inline double plancherel_density(const SpaceDescriptor& sp, double lambda) {
  switch (sp.model) {
    case SpaceModel::euclidean:
      return 1.0;
    case SpaceModel::poincare_disk_su11:
      return 0.5 * M_PI * lambda * std::tanh(0.5 * M_PI * lambda);
    case SpaceModel::poincare_ball: {
      int m = sp.m;
      if (m % 2 == 1) {
        int k = (m - 1) / 2;
        double pref = std::pow(2.0, k - 1) * double_factorial(2 * k - 1);
        double prod = 1.0;
        for (int j = 0; j <= k - 1; ++j) prod *= lambda * lambda + j * j;
        return prod / (pref * pref);
      }
      int k = m / 2;
      double pref = std::pow(2.0, k - 1) * double_factorial(2 * k - 2);
      double prod = 1.0;
      for (int j = 0; j <= k - 1; ++j) {
        double h = (2.0 * j - 1.0) / 2.0;
        prod *= lambda * lambda + h * h;
      }
      double core = M_PI * lambda * std::tanh(M_PI * lambda) / (lambda * lambda + 0.25);
      return core * prod / (pref * pref);
    }
    case SpaceModel::spd:
      throw ConfigError("plancherel_density: spd uses spd_plancherel_weight");
  }
  return 0.0;
}

struct Horosphere {
  VecD through;
  VecD normal;
};

inline bool same_horosphere(const SpaceDescriptor& sp, const Horosphere& h1,
                            const Horosphere& h2, double tol = 1e-10) {
  return (h1.normal - h2.normal).norm() <= tol &&
         std::abs(composite_distance(sp, h1.through, h1.normal) -
                  composite_distance(sp, h2.through, h2.normal)) <= tol;
}

struct MobiusElement {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
  bool valid(double tol = 1e-12) const {
    return std::abs(std::norm(alpha) - std::norm(beta) - 1.0) <= tol;
  }
  MobiusElement inverse() const { return {std::conj(alpha), -beta}; }
  MobiusElement operator*(const MobiusElement& o) const {
    // matrix product of [[alpha, beta],[conj beta, conj alpha]]
    return {alpha * o.alpha + beta * std::conj(o.beta),
            alpha * o.beta + beta * std::conj(o.alpha)};
  }
};

inline Complex mobius_apply(const MobiusElement& g, Complex z) {
  return (g.alpha * z + g.beta) / (std::conj(g.beta) * z + std::conj(g.alpha));
}

inline MobiusElement random_mobius(Rng& rng, double t_max = 2.0) {
  double t = rng.uniform(0.0, t_max);
  double p1 = rng.uniform(0.0, 2.0 * M_PI), p2 = rng.uniform(0.0, 2.0 * M_PI);
  MobiusElement k1{Complex(std::cos(p1), std::sin(p1)), 0.0};
  MobiusElement at{std::cosh(t), std::sinh(t)};
  MobiusElement k2{Complex(std::cos(p2), std::sin(p2)), 0.0};
  return k1 * at * k2;
}

}  // namespace horolet
