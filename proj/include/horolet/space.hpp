#pragma once

#include <cmath>

#include "horolet/hyperbolic.hpp"
#include "horolet/quadrature.hpp"
#include "horolet/spd.hpp"
#include "horolet/special.hpp"
#include "horolet/types.hpp"

namespace horolet {

inline double surface_area_sphere(int mm1) {
  // area of S^{mm1-1}
  if (mm1 == 1) return 2.0;
  if (mm1 == 2) return 2.0 * M_PI;
  if (mm1 == 3) return 4.0 * M_PI;
  return 2.0 * std::pow(M_PI, mm1 / 2.0) / std::exp(log_gamma(Complex(mm1 / 2.0, 0)).real());
}

inline int factorial_int(int n) {
  int v = 1;
  for (int k = 2; k <= n; ++k) v *= k;
  return v;
}

inline SpaceDescriptor space_descriptor(SpaceModel model, int m) {
  if (m < 1) throw ConfigError("space_descriptor: m >= 1 required");
  SpaceDescriptor d;
  d.model = model;
  d.m = m;
  switch (model) {
    case SpaceModel::euclidean:
      d.rank = m;
      d.rho = VecD::Zero(m);
      d.weyl_order = 1;
      d.inv_normalization = std::pow(2.0 * M_PI, -m);
      break;
    case SpaceModel::poincare_ball: {
      if (m < 2) throw ConfigError("poincare_ball: m >= 2 required");
      d.rank = 1;
      d.rho = VecD::Constant(1, (m - 1) / 2.0);
      d.weyl_order = 1;
      // (1/2) c_m^2 with c_m^2 = 2^{2 rho} / (2 pi vol(S^{m-1}))
      d.inv_normalization =
          std::pow(2.0, m - 1) / (4.0 * M_PI * surface_area_sphere(m));
      break;
    }
    case SpaceModel::poincare_disk_su11:
      if (m != 2) throw ConfigError("poincare_disk_su11: m = 2 only");
      d.rank = 1;
      d.rho = VecD::Constant(1, 1.0);
      d.weyl_order = 1;
      d.inv_normalization = 1.0 / (2.0 * M_PI * M_PI);
      break;
    case SpaceModel::spd:
      if (m < 2) throw ConfigError("spd: m >= 2 required");
      d.rank = m;
      d.rho = spd_rho_vector(m);
      d.weyl_order = factorial_int(m);
      d.inv_normalization = 0.0;  // self-calibrated per grid
      break;
  }
  return d;
}

inline SpaceDescriptor parse_space(const std::string& tag, int m) {
  if (tag == "euclidean") return space_descriptor(SpaceModel::euclidean, m);
  if (tag == "poincare_ball") return space_descriptor(SpaceModel::poincare_ball, m);
  if (tag == "poincare_disk" || tag == "poincare_disk_su11")
    return space_descriptor(SpaceModel::poincare_disk_su11, 2);
  if (tag == "spd") return space_descriptor(SpaceModel::spd, m);
  throw ConfigError("unknown space model tag: " + tag);
}

inline BoundaryGrid boundary_grid(const SpaceDescriptor& sp, int n) {
  if (n < 2) throw ConfigError("boundary_grid: n >= 2 required");
  BoundaryGrid g;
  if (sp.model == SpaceModel::euclidean && sp.m == 1) {
    // the sign of the scalar product a<x,u> is carried by the mirrored scale
    // grid, so one boundary representative suffices
    g.points = MatD::Constant(1, 1, 1.0);
    g.weights = VecD::Constant(1, 1.0);
    g.point_dim = 1;
    return g;
  }
  int m = sp.model == SpaceModel::spd ? sp.m : sp.m;
  if (sp.model == SpaceModel::spd) {
    static const std::uint64_t primes[9] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
    g.points.resize(m * m, n);
    g.weights = VecD::Constant(n, 1.0 / n);
    g.point_dim = m;
    for (int j = 0; j < n; ++j) {
      MatD a(m, m);
      int t = 0;
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c)
          a(r, c) = inverse_normal_cdf(
              halton(static_cast<std::uint64_t>(j), primes[t++]) * 0.999998 + 1e-6);
      Eigen::HouseholderQR<MatD> qr(a);
      MatD q = qr.householderQ();
      MatD rr = qr.matrixQR().triangularView<Eigen::Upper>();
      for (int i = 0; i < m; ++i)
        if (rr(i, i) < 0) q.col(i) = -q.col(i);
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) g.points(c * m + r, j) = q(r, c);
    }
    return g;
  }
  if (m == 2) {
    g.points.resize(2, n);
    g.weights = VecD::Constant(n, 1.0 / n);
    g.point_dim = 2;
    for (int j = 0; j < n; ++j) {
      double th = 2.0 * M_PI * j / n;
      g.points(0, j) = std::cos(th);
      g.points(1, j) = std::sin(th);
    }
    return g;
  }
  if (m == 3) {
    // product rule: Gauss-Legendre in cos(polar) x equispaced azimuth
    Grid1 pol = gauss_legendre(n, -1.0, 1.0);
    int naz = 2 * n;
    g.points.resize(3, n * naz);
    g.weights.resize(n * naz);
    g.point_dim = 3;
    int idx = 0;
    for (int i = 0; i < n; ++i) {
      double z = pol.nodes[i];
      double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int j = 0; j < naz; ++j) {
        double ph = 2.0 * M_PI * j / naz;
        g.points(0, idx) = s * std::cos(ph);
        g.points(1, idx) = s * std::sin(ph);
        g.points(2, idx) = z;
        g.weights[idx] = pol.weights[i] * 0.5 / naz;
        ++idx;
      }
    }
    return g;
  }
  throw ConfigError("boundary_grid: unsupported dimension");
}

// polar quadrature over the truncated ball carrying the model volume density
struct BallGrid {
  MatD pts;          // m x N
  VecD w;            // Lebesgue weight x model volume density
  int n_radial = 0;
  int n_angular = 0;  // angular nodes (m=2) or sphere nodes (m=3)
  VecD radial_nodes;
  double radius = 0.0;
  int size() const { return static_cast<int>(pts.cols()); }
};

inline BallGrid ball_grid(const SpaceDescriptor& sp, double radius, int n_radial,
                          int n_angular) {
  if (!(radius > 0 && radius < 1) || n_radial < 2 || n_angular < 4)
    throw ConfigError("ball_grid: invalid parameters");
  if (sp.model != SpaceModel::poincare_ball && sp.model != SpaceModel::poincare_disk_su11)
    throw ConfigError("ball_grid: hyperbolic models only");
  Grid1 rad = gauss_legendre(n_radial, 0.0, radius);
  BallGrid g;
  g.n_radial = n_radial;
  g.radius = radius;
  g.radial_nodes = rad.nodes;
  if (sp.m == 2) {
    g.n_angular = n_angular;
    g.pts.resize(2, n_radial * n_angular);
    g.w.resize(n_radial * n_angular);
    int idx = 0;
    for (int i = 0; i < n_radial; ++i) {
      double r = rad.nodes[i];
      VecD x(2);
      for (int j = 0; j < n_angular; ++j) {
        double th = 2.0 * M_PI * j / n_angular;
        x[0] = r * std::cos(th);
        x[1] = r * std::sin(th);
        g.pts.col(idx) = x;
        g.w[idx] = rad.weights[i] * r * (2.0 * M_PI / n_angular) *
                   model_volume_density(sp, x);
        ++idx;
      }
    }
    return g;
  }
  if (sp.m == 3) {
    BoundaryGrid sph = boundary_grid(sp, n_angular);
    int ns = sph.size();
    g.n_angular = ns;
    g.pts.resize(3, n_radial * ns);
    g.w.resize(n_radial * ns);
    int idx = 0;
    for (int i = 0; i < n_radial; ++i) {
      double r = rad.nodes[i];
      for (int j = 0; j < ns; ++j) {
        VecD x = r * sph.points.col(j);
        g.pts.col(idx) = x;
        g.w[idx] = rad.weights[i] * r * r * (4.0 * M_PI) * sph.weights[j] *
                   model_volume_density(sp, x);
        ++idx;
      }
    }
    return g;
  }
  throw ConfigError("ball_grid: m in {2,3} only");
}

inline PointGrid as_points(const BallGrid& g) {
  PointGrid p;
  p.points = g.pts;
  p.weights = g.w;
  return p;
}

// tensor Gauss-Legendre box [-extent, extent]^m, Lebesgue weights
inline PointGrid euclid_grid(const SpaceDescriptor& sp, double extent, int n_per_axis) {
  if (sp.model != SpaceModel::euclidean) throw ConfigError("euclid_grid: wrong model");
  if (extent <= 0 || n_per_axis < 2) throw ConfigError("euclid_grid: invalid parameters");
  Grid1 ax = gauss_legendre(n_per_axis, -extent, extent);
  int m = sp.m;
  int total = 1;
  for (int d = 0; d < m; ++d) total *= n_per_axis;
  PointGrid g;
  g.points.resize(m, total);
  g.weights.resize(total);
  std::vector<int> idx(m, 0);
  for (int k = 0; k < total; ++k) {
    double w = 1.0;
    for (int d = 0; d < m; ++d) {
      g.points(d, k) = ax.nodes[idx[d]];
      w *= ax.weights[idx[d]];
    }
    g.weights[k] = w;
    for (int d = 0; d < m; ++d) {
      if (++idx[d] < n_per_axis) break;
      idx[d] = 0;
    }
  }
  return g;
}

// 2x2 positive-definite matrices as entries (x11, x22, x12) on a tensor GL
// box, masked to det > 0; weights carry the invariant density det^{-3/2}
inline PointGrid spd2_grid(const SpaceDescriptor& sp, int n_per_axis,
                           double diag_lo = 0.22, double diag_hi = 3.5,
                           double off_max = 1.65) {
  if (sp.model != SpaceModel::spd || sp.m != 2)
    throw ConfigError("spd2_grid: spd m=2 only");
  Grid1 dg = gauss_legendre(n_per_axis, diag_lo, diag_hi);
  Grid1 og = gauss_legendre(n_per_axis, -off_max, off_max);
  std::vector<double> cols;
  std::vector<double> ws;
  cols.reserve(static_cast<size_t>(n_per_axis) * n_per_axis * n_per_axis * 4);
  for (int i = 0; i < n_per_axis; ++i)
    for (int j = 0; j < n_per_axis; ++j)
      for (int k = 0; k < n_per_axis; ++k) {
        double x11 = dg.nodes[i], x22 = dg.nodes[j], x12 = og.nodes[k];
        double det = x11 * x22 - x12 * x12;
        if (det <= 1e-9) continue;
        cols.insert(cols.end(), {x11, x12, x12, x22});
        ws.push_back(dg.weights[i] * dg.weights[j] * og.weights[k] *
                     std::pow(det, -1.5));
      }
  PointGrid g;
  int n = static_cast<int>(ws.size());
  g.points.resize(4, n);
  g.weights.resize(n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < 4; ++r) g.points(r, c) = cols[4 * c + r];
    g.weights[c] = ws[c];
  }
  return g;
}

}  // namespace horolet
