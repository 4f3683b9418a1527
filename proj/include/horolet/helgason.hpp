#pragma once

#include <utility>
#include <vector>

#include "horolet/hyperbolic.hpp"
#include "horolet/quadrature.hpp"
#include "horolet/reduction.hpp"
#include "horolet/space.hpp"
#include "horolet/spd.hpp"
#include "horolet/types.hpp"

namespace horolet {

// tensor frequency grid over the rank-r frequency space; column k of nodes is
// the frequency vector of flat index k, first axis outermost
struct FrequencyGrid {
  std::vector<Grid1> axes;
  MatD nodes;
  VecD weights;
  int rank() const { return static_cast<int>(axes.size()); }
  int size() const { return static_cast<int>(nodes.cols()); }
};

inline FrequencyGrid tensor_frequency_grid(const std::vector<Grid1>& axes) {
  if (axes.empty()) throw ConfigError("frequency grid needs at least one axis");
  int r = static_cast<int>(axes.size());
  int total = 1;
  for (const auto& a : axes) total *= a.size();
  FrequencyGrid g;
  g.axes = axes;
  g.nodes.resize(r, total);
  g.weights.resize(total);
  for (int k = 0; k < total; ++k) {
    int rem = k;
    double w = 1.0;
    for (int d = r - 1; d >= 0; --d) {
      int nd = axes[d].size();
      int id = rem % nd;
      rem /= nd;
      g.nodes(d, k) = axes[d].nodes[id];
      w *= axes[d].weights[id];
    }
    g.weights[k] = w;
  }
  return g;
}

inline FrequencyGrid symmetric_frequency_grid(const SpaceDescriptor& sp,
                                              double lambda_max, int n_per_axis) {
  Grid1 ax = gauss_legendre(n_per_axis, -lambda_max, lambda_max);
  return tensor_frequency_grid(std::vector<Grid1>(sp.rank, ax));
}

// |c(lambda)|^{-2} factor of the inversion measure (1 on Euclidean space)
inline double spectral_weight(const SpaceDescriptor& sp, const VecD& lam) {
  switch (sp.model) {
    case SpaceModel::euclidean:
      return 1.0;
    case SpaceModel::spd:
      return spd_plancherel_weight(lam);
    default:
      return plancherel_density(sp, lam[0]);
  }
}

// horospherical coordinates of every grid column against one boundary node:
// row d of the result is component d of <x, u>
inline MatD composite_field(const SpaceDescriptor& sp, const MatD& X, const VecD& u) {
  int n = static_cast<int>(X.cols());
  if (sp.model == SpaceModel::euclidean) return X;
  if (sp.model == SpaceModel::spd) {
    int m = sp.m;
    MatD k = Eigen::Map<const MatD>(u.data(), m, m);
    MatD c(m, n);
    for (int i = 0; i < n; ++i) {
      MatD x = Eigen::Map<const MatD>(X.col(i).data(), m, m);
      c.col(i) = spd_composite_distance(x, k);
    }
    return c;
  }
  MatD c(1, n);
  for (int i = 0; i < n; ++i) c(0, i) = composite_distance(sp, X.col(i), u);
  return c;
}

struct SpectralFunction {
  MatC values;  // (frequency node, boundary node)
  FrequencyGrid freq;
  BoundaryGrid boundary;
  SpaceDescriptor space;
};

namespace detail {

// one boundary column of the forward transform
inline void forward_column(const SpaceDescriptor& sp, const FrequencyGrid& freq,
                           const MatD& X, const VecC& fw, const VecD& u, MatC& out,
                           int col) {
  MatD c = composite_field(sp, X, u);
  int nx = static_cast<int>(X.cols());
  VecC base(nx);
  for (int i = 0; i < nx; ++i)
    base[i] = fw[i] * std::exp(sp.rho.dot(c.col(i)));
  int r = freq.rank();
  if (r == 2) {
    // factor the phase through the two axes and contract; the matrix product
    // keeps a fixed summation order independent of thread count
    int n0 = freq.axes[0].size(), n1 = freq.axes[1].size();
    MatC ph0(n0, nx), ph1(n1, nx);
    for (int a = 0; a < n0; ++a)
      for (int i = 0; i < nx; ++i)
        ph0(a, i) = std::exp(Complex(0.0, -freq.axes[0].nodes[a] * c(0, i)));
    for (int b = 0; b < n1; ++b)
      for (int i = 0; i < nx; ++i)
        ph1(b, i) = std::exp(Complex(0.0, -freq.axes[1].nodes[b] * c(1, i)));
    MatC t = ph0 * base.asDiagonal();
    MatC fu = t * ph1.transpose();
    for (int a = 0; a < n0; ++a)
      for (int b = 0; b < n1; ++b) out(a * n1 + b, col) = fu(a, b);
    return;
  }
  std::vector<Complex> terms(nx);
  for (int k = 0; k < freq.size(); ++k) {
    if (r == 1) {
      double lam = freq.nodes(0, k);
      for (int i = 0; i < nx; ++i)
        terms[i] = base[i] * std::exp(Complex(0.0, -lam * c(0, i)));
    } else {
      for (int i = 0; i < nx; ++i)
        terms[i] = base[i] *
                   std::exp(Complex(0.0, -freq.nodes.col(k).dot(c.col(i))));
    }
    out(k, col) = pairwise_sum(terms.data(), terms.size());
  }
}

}  // namespace detail

// forward transform int f(x) e^{(-i lambda + rho)<x,u>} dx by quadrature;
// X weights must already carry the volume density
inline SpectralFunction hf_forward(const ScalarField& f, const SpaceDescriptor& sp,
                                   const FrequencyGrid& freq, const BoundaryGrid& bnd,
                                   const PointGrid& X, int threads = 1) {
  if (sp.rank != freq.rank()) throw ConfigError("hf_forward: frequency rank mismatch");
  SpectralFunction F;
  F.freq = freq;
  F.boundary = bnd;
  F.space = sp;
  F.values.resize(freq.size(), bnd.size());
  int nx = X.size();
  VecC fw(nx);
  for (int i = 0; i < nx; ++i) fw[i] = X.weights[i] * f(X.points.col(i));
  bool broadcast = f.radial && sp.curved();
  if (broadcast) {
    detail::forward_column(sp, freq, X.points, fw, bnd.points.col(0), F.values, 0);
    for (int u = 1; u < bnd.size(); ++u) F.values.col(u) = F.values.col(0);
    return F;
  }
  parallel_for(bnd.size(), threads, [&](int u) {
    detail::forward_column(sp, freq, X.points, fw, bnd.points.col(u), F.values, u);
  });
  return F;
}

// inversion measure constant; 0 marks self-calibrated spaces where the caller
// anchors the constant at a reference point
inline double inverse_constant(const SpaceDescriptor& sp, double norm_override) {
  if (norm_override != 0.0) return norm_override;
  return sp.inv_normalization != 0.0 ? sp.inv_normalization : 1.0;
}

inline Complex hf_inverse(const SpectralFunction& F, const VecD& x,
                          double norm_override = 0.0) {
  const SpaceDescriptor& sp = F.space;
  int nu = F.boundary.size(), nk = F.freq.size();
  std::vector<Complex> ucol(nu);
  std::vector<Complex> terms(nk);
  MatD xm(x.size(), 1);
  xm.col(0) = x;
  for (int u = 0; u < nu; ++u) {
    MatD c = composite_field(sp, xm, F.boundary.points.col(u));
    double rc = sp.rho.dot(c.col(0));
    for (int k = 0; k < nk; ++k) {
      double lc = F.freq.nodes.col(k).dot(c.col(0));
      terms[k] = F.values(k, u) * F.freq.weights[k] *
                 spectral_weight(sp, F.freq.nodes.col(k)) *
                 std::exp(Complex(rc, lc));
    }
    ucol[u] = F.boundary.weights[u] * pairwise_sum(terms.data(), nk);
  }
  return inverse_constant(sp, norm_override) * pairwise_sum(ucol.data(), nu);
}

inline VecC hf_inverse_many(const SpectralFunction& F, const MatD& pts, int threads = 1,
                            double norm_override = 0.0) {
  VecC out(pts.cols());
  parallel_for(static_cast<int>(pts.cols()), threads,
               [&](int i) { out[i] = hf_inverse(F, pts.col(i), norm_override); });
  return out;
}

inline SpectralFunction lambda_multiplier(const SpectralFunction& F) {
  SpectralFunction G = F;
  for (int k = 0; k < F.freq.size(); ++k)
    G.values.row(k) *= spectral_weight(F.space, F.freq.nodes.col(k));
  return G;
}

// lhs = int |f|^2 dx, rhs = spectral-side norm with the inversion measure
inline std::pair<double, double> plancherel_check(const ScalarField& f,
                                                  const SpaceDescriptor& sp,
                                                  const FrequencyGrid& freq,
                                                  const BoundaryGrid& bnd,
                                                  const PointGrid& X, int threads = 1) {
  SpectralFunction F = hf_forward(f, sp, freq, bnd, X, threads);
  int nx = X.size();
  std::vector<Complex> terms(nx);
  for (int i = 0; i < nx; ++i) {
    double v = f(X.points.col(i));
    terms[i] = X.weights[i] * v * v;
  }
  double lhs = pairwise_sum(terms.data(), nx).real();
  std::vector<Complex> ucol(bnd.size());
  std::vector<Complex> kterms(freq.size());
  for (int u = 0; u < bnd.size(); ++u) {
    for (int k = 0; k < freq.size(); ++k)
      kterms[k] = freq.weights[k] * spectral_weight(sp, freq.nodes.col(k)) *
                  std::norm(F.values(k, u));
    ucol[u] = bnd.weights[u] * pairwise_sum(kterms.data(), freq.size());
  }
  double rhs = inverse_constant(sp, 0.0) * pairwise_sum(ucol.data(), bnd.size()).real();
  return {lhs, rhs};
}

// worst-case defect of the real-input symmetry F(-lambda, u) = conj(F(lambda, u)),
// relative to the largest spectral magnitude
inline double spectrum_conj_symmetry_defect(const SpectralFunction& F) {
  int r = F.freq.rank();
  std::vector<int> ns(r);
  for (int d = 0; d < r; ++d) ns[d] = F.freq.axes[d].size();
  double worst = 0.0, scale = 0.0;
  for (int k = 0; k < F.freq.size(); ++k) {
    int rem = k, mirror = 0, stride = 1;
    std::vector<int> idx(r);
    for (int d = r - 1; d >= 0; --d) {
      idx[d] = rem % ns[d];
      rem /= ns[d];
    }
    for (int d = r - 1; d >= 0; --d) {
      mirror += (ns[d] - 1 - idx[d]) * stride;
      stride *= ns[d];
    }
    for (int u = 0; u < F.boundary.size(); ++u) {
      scale = std::max(scale, std::abs(F.values(k, u)));
      worst = std::max(worst,
                       std::abs(F.values(mirror, u) - std::conj(F.values(k, u))));
    }
  }
  return scale > 0 ? worst / scale : worst;
}

// 4-point Lagrange interpolation on an ascending node array
inline Complex lagrange4(const VecD& xs, const VecC& ys, double x) {
  int n = static_cast<int>(xs.size());
  if (n < 4) throw ConfigError("lagrange4: need at least 4 nodes");
  int lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    (xs[mid] <= x ? lo : hi) = mid;
  }
  int w0 = std::min(std::max(lo - 1, 0), n - 4);
  Complex num = 0.0;
  double den = 0.0;
  for (int i = 0; i < 4; ++i) {
    double xi = xs[w0 + i];
    if (std::abs(x - xi) < 1e-14) return ys[w0 + i];
    double w = 1.0;
    for (int j = 0; j < 4; ++j)
      if (j != i) w /= xi - xs[w0 + j];
    w /= x - xi;
    num += w * ys[w0 + i];
    den += w;
  }
  return num / den;
}

// Lambda f (or f itself on Euclidean space) held on the integration grid;
// barycentric evaluation serves off-grid points
struct LambdaCache {
  SpaceDescriptor space;
  PointGrid pts;
  VecC values;
  bool radial = false;
  int n_angular = 0;  // radial-major node order: node = i_rad * n_angular + j
  VecD radial_nodes;
  VecC radial_values;

  Complex eval(const VecD& x) const {
    if (radial) return lagrange4(radial_nodes, radial_values, x.norm());
    if (space.m != 2 || space.model == SpaceModel::spd)
      throw ConfigError("lambda cache: off-grid evaluation needs the radial fast path");
    double r = x.norm(), th = std::atan2(x[1], x[0]);
    if (th < 0) th += 2.0 * M_PI;
    int na = n_angular;
    double step = 2.0 * M_PI / na;
    int j0 = static_cast<int>(std::floor(th / step));
    VecD ths(4);
    VecC col(4);
    int nr = static_cast<int>(radial_nodes.size());
    for (int t = 0; t < 4; ++t) {
      int j = j0 - 1 + t;
      ths[t] = j * step;
      int jw = ((j % na) + na) % na;
      VecC along(nr);
      for (int i = 0; i < nr; ++i) along[i] = values[i * na + jw];
      col[t] = lagrange4(radial_nodes, along, r);
    }
    return lagrange4(ths, col, th);
  }
};

// builds the cache: Euclidean spaces store f directly (the ridgelet integral
// uses f itself there); curved spaces store hf_inverse of the
// density-multiplied spectrum
inline LambdaCache build_lambda_cache(const ScalarField& f, const SpaceDescriptor& sp,
                                      const FrequencyGrid& freq, const BoundaryGrid& bnd,
                                      const BallGrid& ball, int threads = 1) {
  LambdaCache cache;
  cache.space = sp;
  cache.pts = as_points(ball);
  int nx = cache.pts.size();
  cache.values.resize(nx);
  if (!sp.curved()) {
    for (int i = 0; i < nx; ++i) cache.values[i] = f(cache.pts.points.col(i));
    return cache;
  }
  SpectralFunction G = lambda_multiplier(hf_forward(f, sp, freq, bnd, cache.pts, threads));
  cache.n_angular = ball.n_angular;
  cache.radial_nodes = ball.radial_nodes;  // polar off-grid eval needs them too
  if (f.radial) {
    cache.radial = true;
    int nr = static_cast<int>(ball.radial_nodes.size());
    MatD axis(sp.m, nr);
    axis.setZero();
    axis.row(0) = ball.radial_nodes.transpose();
    cache.radial_values = hf_inverse_many(G, axis, threads);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < ball.n_angular; ++j)
        cache.values[i * ball.n_angular + j] = cache.radial_values[i];
    return cache;
  }
  cache.values = hf_inverse_many(G, cache.pts.points, threads);
  return cache;
}

// Euclidean variant: grid is a plain box, no spectral step involved
inline LambdaCache build_euclid_cache(const ScalarField& f, const SpaceDescriptor& sp,
                                      const PointGrid& X) {
  LambdaCache cache;
  cache.space = sp;
  cache.pts = X;
  cache.values.resize(X.size());
  for (int i = 0; i < X.size(); ++i) cache.values[i] = f(X.points.col(i));
  return cache;
}

}  // namespace horolet
