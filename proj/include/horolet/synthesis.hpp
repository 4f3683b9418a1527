#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "horolet/helgason.hpp"
#include "horolet/profile.hpp"
#include "horolet/quadrature.hpp"
#include "horolet/reduction.hpp"
#include "horolet/ridgelet.hpp"
#include "horolet/types.hpp"

namespace horolet {

// truncated parameter block [-delta/2, delta/2]^(rank+1) crossed with the
// boundary; the boundary factor carries probability measure, so the block
// volume is delta^(rank+1)
struct ParamDomain {
  SpaceDescriptor space;
  double delta = 0.0;
  int box_axes() const { return space.rank + 1; }
  double box_volume() const { return std::pow(delta, box_axes()); }
};

inline ParamDomain build_domain(const SpaceDescriptor& sp, double delta) {
  if (!(delta > 0.0)) throw ConfigError("build_domain: delta must be positive");
  return ParamDomain{sp, delta};
}

// one cell: an (a, b) box crossed with one boundary patch; the patch weight
// is folded into the volume so the cells of a level sum to delta^(rank+1)
struct Cell {
  VecD a_lo, a_hi;
  double b_lo = 0.0, b_hi = 0.0;
  int patch = 0;
  VecD a_rep;
  double b_rep = 0.0;
  double volume = 0.0;
};

struct CellDecomposition {
  ParamDomain domain;
  int level = 0;  // subdivisions per box axis
  BoundaryGrid boundary;
  std::vector<Cell> cells;
  int size() const { return static_cast<int>(cells.size()); }
};

// diameter of the (a, b) box; the boundary patch does not contribute
inline double cell_diameter(const Cell& c) {
  double s = 0.0;
  for (int ax = 0; ax < c.a_lo.size(); ++ax) {
    double d = c.a_hi[ax] - c.a_lo[ax];
    s += d * d;
  }
  double db = c.b_hi - c.b_lo;
  return std::sqrt(s + db * db);
}

// uniform n-fold split per box axis, midpoint representatives; cell order is
// patch-major, then scale axes (axis 0 outermost), then bias, and both
// extraction paths rely on that order
inline CellDecomposition decompose(const ParamDomain& dom, int n,
                                   const BoundaryGrid& bnd) {
  if (n < 1) throw ConfigError("decompose: need at least one cell per axis");
  if (bnd.size() == 0) throw ConfigError("decompose: empty boundary grid");
  int r = dom.space.rank;
  double h = dom.delta / n;
  VecD edges(n + 1), mids(n);
  for (int i = 0; i <= n; ++i) edges[i] = -0.5 * dom.delta + h * i;
  for (int i = 0; i < n; ++i) mids[i] = 0.5 * (edges[i] + edges[i + 1]);
  CellDecomposition dec;
  dec.domain = dom;
  dec.level = n;
  dec.boundary = bnd;
  long per_patch = 1;
  for (int ax = 0; ax < r + 1; ++ax) per_patch *= n;
  dec.cells.reserve(static_cast<size_t>(per_patch) * bnd.size());
  std::vector<int> idx(r + 1, 0);
  double box_vol = std::pow(h, r + 1);
  for (int j = 0; j < bnd.size(); ++j) {
    std::fill(idx.begin(), idx.end(), 0);
    for (long k = 0; k < per_patch; ++k) {
      Cell c;
      c.a_lo.resize(r);
      c.a_hi.resize(r);
      c.a_rep.resize(r);
      for (int ax = 0; ax < r; ++ax) {
        c.a_lo[ax] = edges[idx[ax]];
        c.a_hi[ax] = edges[idx[ax] + 1];
        c.a_rep[ax] = mids[idx[ax]];
      }
      c.b_lo = edges[idx[r]];
      c.b_hi = edges[idx[r] + 1];
      c.b_rep = mids[idx[r]];
      c.patch = j;
      c.volume = box_vol * bnd.weights[j];
      dec.cells.push_back(std::move(c));
      for (int ax = r; ax >= 0; --ax) {  // bias axis spins fastest
        if (++idx[ax] < n) break;
        idx[ax] = 0;
      }
    }
  }
  return dec;
}

// finite ridgelet network; evaluation delegates to network_apply on the
// atomic measure, so the two routes agree by construction
struct FiniteNetwork {
  SpaceDescriptor space;
  std::shared_ptr<Profile1D> sigma;
  ParamMeasure gamma;
  Complex eval_complex(const VecD& x) const {
    return network_apply(gamma, *sigma, x, space);
  }
  double operator()(const VecD& x) const { return eval_complex(x).real(); }
  int size() const { return static_cast<int>(gamma.atoms.size()); }
};

// c_i = R[f](rep_i) * vol_i * N / <<sigma, rho>>; the boundary weight rides
// in vol_i and N is the inversion constant on curved spaces (explicit
// override for self-calibrated models), 1 on Euclidean ones
inline FiniteNetwork extract_coefficients(const LambdaCache& cache,
                                          const Profile1D& sigma,
                                          const Profile1D& rho,
                                          const CellDecomposition& dec,
                                          int threads = 1,
                                          double norm_override = 0.0) {
  const SpaceDescriptor& sp = cache.space;
  if (sp.model != dec.domain.space.model || sp.m != dec.domain.space.m)
    throw ConfigError("extract_coefficients: cache and cells disagree on the space");
  Complex pairing = scalar_product(sigma, rho, sp);
  if (std::abs(pairing) < 1e-8)
    throw NumericalError("extract_coefficients: degenerate sigma-rho pairing");
  double npar = sp.curved() ? inverse_constant(sp, norm_override) : 1.0;
  FiniteNetwork net;
  net.space = sp;
  net.sigma = std::make_shared<Profile1D>(sigma);
  net.gamma.atomic = true;
  net.gamma.atoms.resize(dec.cells.size());
  int n = dec.level;
  if (sp.rank == 1 && cache.radial) {
    // boundary-symmetric target: one transform slice serves every patch
    VecD a_mids(n);
    Grid1 b_mids;
    b_mids.nodes.resize(n);
    b_mids.weights = VecD::Zero(n);
    double h = dec.domain.delta / n;
    for (int i = 0; i < n; ++i) {
      a_mids[i] = -0.5 * dec.domain.delta + h * (i + 0.5);
      b_mids.nodes[i] = a_mids[i];
    }
    MatC slice = ridgelet_slice(cache, rho, a_mids, dec.boundary.points.col(0),
                                b_mids, threads);
    long per_patch = static_cast<long>(n) * n;
    parallel_for(dec.cells.size(), threads, [&](std::size_t i) {
      const Cell& c = dec.cells[i];
      long local = static_cast<long>(i) % per_patch;
      int ia = static_cast<int>(local / n), ib = static_cast<int>(local % n);
      ParamAtom at;
      at.a = c.a_rep;
      at.u = dec.boundary.points.col(c.patch);
      at.b = c.b_rep;
      at.c = slice(ia, ib) * c.volume * npar / pairing;
      net.gamma.atoms[i] = at;
    });
  } else {
    parallel_for(dec.cells.size(), threads, [&](std::size_t i) {
      const Cell& c = dec.cells[i];
      ParamAtom at;
      at.a = c.a_rep;
      at.u = dec.boundary.points.col(c.patch);
      at.b = c.b_rep;
      at.c = ridgelet_node(cache, rho, c.a_rep, at.u, c.b_rep) * c.volume *
             npar / pairing;
      net.gamma.atoms[i] = at;
    });
  }
  return net;
}

struct NetworkError {
  double sup = 0.0;
  double l2 = 0.0;  // rms over the probe set
};

inline NetworkError network_errors(const FiniteNetwork& net, const ScalarField& f,
                                   const MatD& probes, int threads = 1) {
  int np = static_cast<int>(probes.cols());
  VecD diff(np);
  parallel_for(np, threads, [&](std::size_t i) {
    VecD x = probes.col(i);
    diff[i] = std::abs(net(x) - f.eval(x));
  });
  NetworkError e;
  double ss = 0.0;
  for (int i = 0; i < np; ++i) {
    e.sup = std::max(e.sup, diff[i]);
    ss += diff[i] * diff[i];
  }
  e.l2 = np > 0 ? std::sqrt(ss / np) : 0.0;
  return e;
}

inline double sup_error(const FiniteNetwork& net, const ScalarField& f,
                        const MatD& probes, int threads = 1) {
  return network_errors(net, f, probes, threads).sup;
}

// bounded smooth activations qualify directly; rectifiers and steps only
// after enough finite differencing tames their growth
inline void require_universality_hypothesis(const Profile1D& sigma) {
  const std::string& t = sigma.tag;
  if (t == "tanh" || t == "gaussian") return;
  auto fd_order = [&t](const char* base) -> int {
    std::string pre = std::string(base) + "_fd";
    if (t.rfind(pre, 0) != 0) return -1;
    const std::string suffix = t.substr(pre.size());
    if (suffix.empty() ||
        suffix.find_first_not_of("0123456789") != std::string::npos)
      return -1;
    return std::stoi(suffix);
  };
  if (fd_order("relu") >= 2) return;
  if (fd_order("step") >= 1) return;
  throw ConfigError(
      "universality hypothesis rejects sigma '" + t +
      "': admissible are tanh, gaussian, relu with >= 2 finite differences, "
      "step with >= 1");
}

struct SweepStep {
  double delta = 0.0;
  int n = 0;
};

struct SweepRow {
  double delta = 0.0;
  int n_level = 0;
  int atoms = 0;
  double sup_error = 0.0;
  double l2_error = 0.0;
  double seconds = 0.0;
};

struct SweepOptions {
  MatD probes;  // columns are evaluation points
  int threads = 1;
  bool band_limited = false;   // add a high-resolution level to expose the
  int band_limited_level = 0;  // truncation floor; 0 means twice the finest n
  double norm_override = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  Complex pairing;
  double sup_f = 0.0;
  double band_limited_sup = -1.0;
  double band_limited_l2 = -1.0;
  int band_limited_level = 0;
  // max |R| over the outermost scale / bias cells relative to the overall
  // max, measured at the finest scheduled level; small values mean the
  // parameter block already captures the transform mass
  double tail_edge_scale = 0.0;
  double tail_edge_bias = 0.0;
  std::string rho_tag;
  FiniteNetwork finest;  // network of the last scheduled level
};

inline SweepResult universality_sweep(const ScalarField& f, const Profile1D& sigma,
                                      const Profile1D& rho0,
                                      const SpaceDescriptor& sp,
                                      const std::vector<SweepStep>& schedule,
                                      const LambdaCache& cache,
                                      const BoundaryGrid& bnd,
                                      const SweepOptions& opt) {
  require_universality_hypothesis(sigma);
  if (schedule.empty()) throw ConfigError("universality_sweep: empty schedule");
  if (opt.probes.cols() == 0)
    throw ConfigError("universality_sweep: no probe points");
  int smoothing = sp.curved() ? sp.rank : sp.m;
  Profile1D rho = fractional_laplacian(rho0, smoothing);
  SweepResult res;
  res.rho_tag = rho.tag;
  res.pairing = scalar_product(sigma, rho, sp);
  for (int i = 0; i < opt.probes.cols(); ++i) {
    VecD x = opt.probes.col(i);
    res.sup_f = std::max(res.sup_f, std::abs(f.eval(x)));
  }
  auto run_level = [&](double delta, int n, SweepRow& row) -> FiniteNetwork {
    auto t0 = std::chrono::steady_clock::now();
    CellDecomposition dec = decompose(build_domain(sp, delta), n, bnd);
    FiniteNetwork net = extract_coefficients(cache, sigma, rho, dec,
                                             opt.threads, opt.norm_override);
    NetworkError err = network_errors(net, f, opt.probes, opt.threads);
    auto t1 = std::chrono::steady_clock::now();
    row.delta = delta;
    row.n_level = n;
    row.atoms = net.size();
    row.sup_error = err.sup;
    row.l2_error = err.l2;
    row.seconds = std::chrono::duration<double>(t1 - t0).count();
    return net;
  };
  double npar_last = sp.curved() ? inverse_constant(sp, opt.norm_override) : 1.0;
  for (const SweepStep& step : schedule) {
    SweepRow row;
    res.finest = run_level(step.delta, step.n, row);
    res.rows.push_back(row);
  }
  {
    // recover |R(rep)| from the stored coefficients to rate the block tails
    const SweepStep& last = schedule.back();
    double h = last.delta / last.n;
    double edge = 0.5 * last.delta - h;  // reps beyond this sit in edge cells
    double max_all = 0.0, max_a = 0.0, max_b = 0.0;
    CellDecomposition dec = decompose(build_domain(sp, last.delta), last.n, bnd);
    for (int i = 0; i < res.finest.size(); ++i) {
      const ParamAtom& at = res.finest.gamma.atoms[i];
      const Cell& c = dec.cells[i];
      double r = std::abs(at.c) * std::abs(res.pairing) / (c.volume * npar_last);
      max_all = std::max(max_all, r);
      bool edge_a = false;
      for (int ax = 0; ax < at.a.size(); ++ax)
        edge_a = edge_a || std::abs(at.a[ax]) > edge + 1e-12;
      if (edge_a) max_a = std::max(max_a, r);
      if (std::abs(at.b) > edge + 1e-12) max_b = std::max(max_b, r);
    }
    if (max_all > 0.0) {
      res.tail_edge_scale = max_a / max_all;
      res.tail_edge_bias = max_b / max_all;
    }
  }
  if (opt.band_limited) {
    int nmax = 0;
    double dmax = 0.0;
    for (const SweepStep& s : schedule) {
      nmax = std::max(nmax, s.n);
      dmax = std::max(dmax, s.delta);
    }
    int nb = opt.band_limited_level > 0 ? opt.band_limited_level : 2 * nmax;
    SweepRow row;
    run_level(dmax, nb, row);
    res.band_limited_sup = row.sup_error;
    res.band_limited_l2 = row.l2_error;
    res.band_limited_level = nb;
  }
  return res;
}

}  // namespace horolet
