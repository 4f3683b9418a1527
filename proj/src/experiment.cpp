#include "horolet/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>

#include "horolet/field.hpp"
#include "horolet/helgason.hpp"
#include "horolet/hyperbolic.hpp"
#include "horolet/profile.hpp"
#include "horolet/ridgelet.hpp"
#include "horolet/space.hpp"
#include "horolet/spd.hpp"
#include "horolet/synthesis.hpp"

namespace horolet {
namespace {

using nlohmann::json;

void note(const RunOptions& opt, const std::string& msg) {
  if (opt.verbose) std::cerr << "[horolet] " << msg << "\n";
}

// probes sit on the first-axis geodesic through the origin (identity for
// spd), which is where every bundled target varies
MatD probe_matrix(const SpaceDescriptor& sp, const ExperimentConfig& cfg) {
  int np = cfg.n_probes;
  auto t_of = [np](int i, double lo, double hi) {
    return np == 1 ? lo : lo + (hi - lo) * i / (np - 1.0);
  };
  if (sp.model == SpaceModel::euclidean) {
    MatD p = MatD::Zero(sp.m, np);
    for (int i = 0; i < np; ++i) p(0, i) = t_of(i, -cfg.probe_half, cfg.probe_half);
    return p;
  }
  if (sp.model == SpaceModel::spd) {
    int m = sp.m;
    MatD p(m * m, np);
    for (int i = 0; i < np; ++i) {
      double s = t_of(i, 0.0, cfg.probe_radius);
      MatD x = MatD::Identity(m, m);
      x(0, 0) = std::exp(s);
      x(1, 1) = std::exp(-s);
      p.col(i) = Eigen::Map<VecD>(x.data(), m * m);
    }
    return p;
  }
  MatD p = MatD::Zero(sp.m, np);
  for (int i = 0; i < np; ++i) p(0, i) = t_of(i, 0.0, cfg.probe_radius);
  return p;
}

VecD flat_identity(int m) {
  MatD id = MatD::Identity(m, m);
  return Eigen::Map<VecD>(id.data(), m * m);
}

struct GridBundle {
  PointGrid X;
  BallGrid ball;
  bool has_ball = false;
};

GridBundle space_grid(const SpaceDescriptor& sp, const ExperimentConfig& cfg) {
  GridBundle g;
  if (sp.model == SpaceModel::euclidean) {
    g.X = euclid_grid(sp, cfg.box_half, cfg.n_axis);
  } else if (sp.model == SpaceModel::spd) {
    if (sp.m != 2)
      throw ConfigError("config.space: the spd integration grid supports dim 2");
    g.X = spd2_grid(sp, cfg.n_radial);
  } else {
    g.ball = ball_grid(sp, cfg.ball_radius, cfg.n_radial, cfg.n_angular);
    g.X = as_points(g.ball);
    g.has_ball = true;
  }
  return g;
}

LambdaCache make_cache(const ScalarField& f, const SpaceDescriptor& sp,
                       const FrequencyGrid& freq, const BoundaryGrid& bnd,
                       const GridBundle& g, int threads) {
  if (sp.model == SpaceModel::euclidean) return build_euclid_cache(f, sp, g.X);
  if (!g.has_ball)
    throw ConfigError("ridgelet pipelines run on hyperbolic or euclidean spaces");
  return build_lambda_cache(f, sp, freq, bnd, g.ball, threads);
}

Profile1D resolve_rho(const ExperimentConfig& cfg, const SpaceDescriptor& sp) {
  Profile1D rho0 = make_rho0(cfg.rho0, cfg.rho0_shift);
  int smoothing = sp.curved() ? sp.rank : sp.m;
  return fractional_laplacian(rho0, smoothing);
}

void run_transform(const ExperimentConfig& cfg, const SpaceDescriptor& sp,
                   const RunOptions& opt, json& metrics) {
  ScalarField f = make_target(sp, cfg.target);
  FrequencyGrid freq = symmetric_frequency_grid(sp, cfg.lambda_max, cfg.n_freq);
  BoundaryGrid bnd = boundary_grid(sp, cfg.n_boundary);
  GridBundle g = space_grid(sp, cfg);
  note(opt, "forward transform over " + std::to_string(g.X.size()) + " points");
  SpectralFunction F = hf_forward(f, sp, freq, bnd, g.X, cfg.threads);
  metrics["n_frequency_nodes"] = F.freq.size();
  metrics["n_boundary_nodes"] = F.boundary.size();
  metrics["sup_abs_spectrum"] = F.values.cwiseAbs().maxCoeff();
  metrics["conj_symmetry_defect"] = spectrum_conj_symmetry_defect(F);
  double norm = cfg.normalization;
  if (sp.model == SpaceModel::spd && norm == 0.0) {
    // anchor the inversion at the identity, where the bundled target is 1
    VecD xid = flat_identity(sp.m);
    double raw = hf_inverse(F, xid, 1.0).real();
    if (std::abs(raw) < 1e-12)
      throw NumericalError("transform: calibration anchor vanished");
    norm = f(xid) / raw;
    metrics["normalization_calibrated"] = norm;
  }
  MatD probes = probe_matrix(sp, cfg);
  VecC inv = hf_inverse_many(F, probes, cfg.threads, norm);
  double supf = 0.0, supd = 0.0;
  for (int i = 0; i < probes.cols(); ++i) {
    double fv = f(probes.col(i));
    supf = std::max(supf, std::abs(fv));
    supd = std::max(supd, std::abs(inv[i] - Complex(fv)));
  }
  metrics["sup_f_probes"] = supf;
  metrics["round_trip_rel_sup"] = supf > 0 ? supd / supf : supd;
  write_spectra_csv(opt.out_dir + "/spectra.csv", F);
}

void run_plancherel(const ExperimentConfig& cfg, const SpaceDescriptor& sp,
                    const RunOptions& opt, json& metrics) {
  ScalarField f = make_target(sp, cfg.target);
  FrequencyGrid freq = symmetric_frequency_grid(sp, cfg.lambda_max, cfg.n_freq);
  BoundaryGrid bnd = boundary_grid(sp, cfg.n_boundary);
  GridBundle g = space_grid(sp, cfg);
  note(opt, "norm comparison over " + std::to_string(g.X.size()) + " points");
  auto [lhs, rhs] = plancherel_check(f, sp, freq, bnd, g.X, cfg.threads);
  metrics["space_side_norm"] = lhs;
  metrics["spectral_side_norm"] = rhs;
  metrics["rel_defect"] = std::abs(lhs - rhs) / std::max(lhs, 1e-300);
}

void run_reconstruct(const ExperimentConfig& cfg, const SpaceDescriptor& sp,
                     const RunOptions& opt, json& metrics) {
  auto tick = [last = std::chrono::steady_clock::now()](const RunOptions& o,
                                                        const char* stage) mutable {
    auto now = std::chrono::steady_clock::now();
    if (o.verbose)
      std::cerr << "[horolet] " << stage << " "
                << std::chrono::duration<double>(now - last).count() << "s\n";
    last = now;
  };
  ScalarField f = make_target(sp, cfg.target);
  Profile1D sigma = make_sigma(cfg.sigma, cfg.sigma_fd_order, cfg.sigma_fd_step);
  Profile1D rho = resolve_rho(cfg, sp);
  tick(opt, "profiles");
  FrequencyGrid freq = symmetric_frequency_grid(sp, cfg.lambda_max, cfg.n_freq);
  BoundaryGrid bnd = boundary_grid(sp, cfg.n_boundary);
  GridBundle g = space_grid(sp, cfg);
  LambdaCache cache = make_cache(f, sp, freq, bnd, g, cfg.threads);
  tick(opt, "cache");
  ReconstructOptions ro;
  ro.a_min = cfg.a_min;
  ro.a_max = cfg.a_max;
  ro.n_scale = cfg.n_scale;
  ro.b_max = cfg.b_max;
  ro.n_bias = cfg.n_bias;
  ro.threads = cfg.threads;
  note(opt, "reconstructing with rho " + rho.tag);
  Reconstruction rec = reconstruct(f, sigma, rho, sp, cache, bnd, ro);
  tick(opt, "block");
  if (cfg.normalization != 0.0) rec.param_normalization = cfg.normalization;
  MatD probes = probe_matrix(sp, cfg);
  int np = static_cast<int>(probes.cols());
  VecD vals(np);
  parallel_for(np, cfg.threads, [&](std::size_t i) { vals[i] = rec(probes.col(i)); });
  tick(opt, "probes");
  double supf = 0.0, supd = 0.0;
  for (int i = 0; i < np; ++i) {
    double fv = f(probes.col(i));
    supf = std::max(supf, std::abs(fv));
    supd = std::max(supd, std::abs(vals[i] - fv));
  }
  metrics["pairing_re"] = rec.pairing.real();
  metrics["pairing_im"] = rec.pairing.imag();
  metrics["rho"] = rho.tag;
  metrics["sup_f_probes"] = supf;
  metrics["recon_sup_error"] = supd;
  metrics["recon_rel_sup"] = supf > 0 ? supd / supf : supd;
}

void run_ridgelet_dump(const ExperimentConfig& cfg, const SpaceDescriptor& sp,
                       const RunOptions& opt, json& metrics) {
  ScalarField f = make_target(sp, cfg.target);
  Profile1D rho = resolve_rho(cfg, sp);
  FrequencyGrid freq = symmetric_frequency_grid(sp, cfg.lambda_max, cfg.n_freq);
  BoundaryGrid bnd = boundary_grid(sp, cfg.n_boundary);
  GridBundle g = space_grid(sp, cfg);
  LambdaCache cache = make_cache(f, sp, freq, bnd, g, cfg.threads);
  Grid1 sg = mirrored_scale_grid(cfg.n_scale, cfg.a_min, cfg.a_max);
  Grid1 bias = midpoint(cfg.n_bias, -cfg.b_max, cfg.b_max);
  std::vector<MatC> per_u(bnd.size());
  double sup_abs = 0.0;
  for (int j = 0; j < bnd.size(); ++j) {
    per_u[j] = ridgelet_slice(cache, rho, sg.nodes, bnd.points.col(j), bias,
                              cfg.threads);
    sup_abs = std::max(sup_abs, per_u[j].cwiseAbs().maxCoeff());
  }
  metrics["rho"] = rho.tag;
  metrics["sup_abs_block"] = sup_abs;
  metrics["n_rows"] = sg.size() * bnd.size() * bias.size();
  write_ridgelet_csv(opt.out_dir + "/ridgelet.csv", sg.nodes, bnd, bias, per_u);
}

void run_universality(const ExperimentConfig& cfg, const SpaceDescriptor& sp,
                      const RunOptions& opt, json& metrics) {
  if (cfg.schedule.empty())
    throw ConfigError("config.schedule: universality needs at least one level");
  ScalarField f = make_target(sp, cfg.target);
  Profile1D sigma = make_sigma(cfg.sigma, cfg.sigma_fd_order, cfg.sigma_fd_step);
  Profile1D rho0 = make_rho0(cfg.rho0, cfg.rho0_shift);
  FrequencyGrid freq = symmetric_frequency_grid(sp, cfg.lambda_max, cfg.n_freq);
  BoundaryGrid bnd = boundary_grid(sp, cfg.n_boundary);
  GridBundle g = space_grid(sp, cfg);
  LambdaCache cache = make_cache(f, sp, freq, bnd, g, cfg.threads);
  SweepOptions so;
  so.probes = probe_matrix(sp, cfg);
  so.threads = cfg.threads;
  so.band_limited = cfg.band_limited;
  so.norm_override = cfg.normalization;
  note(opt, "sweeping " + std::to_string(cfg.schedule.size()) + " levels");
  SweepResult sw = universality_sweep(f, sigma, rho0, sp, cfg.schedule, cache,
                                      bnd, so);
  write_errors_csv(opt.out_dir + "/errors.csv", sw.rows);
  write_network_json(opt.out_dir + "/network.json", sw.finest);
  metrics["pairing_re"] = sw.pairing.real();
  metrics["pairing_im"] = sw.pairing.imag();
  metrics["rho"] = sw.rho_tag;
  metrics["sup_f_probes"] = sw.sup_f;
  metrics["tail_edge_scale"] = sw.tail_edge_scale;
  metrics["tail_edge_bias"] = sw.tail_edge_bias;
  json rows = json::array();
  for (const SweepRow& r : sw.rows)
    rows.push_back({{"delta", r.delta},
                    {"n", r.n_level},
                    {"atoms", r.atoms},
                    {"sup_error", r.sup_error},
                    {"l2_error", r.l2_error},
                    {"seconds", r.seconds}});
  metrics["levels"] = std::move(rows);
  metrics["final_sup_error"] = sw.rows.back().sup_error;
  metrics["final_rel_sup"] =
      sw.sup_f > 0 ? sw.rows.back().sup_error / sw.sup_f : 0.0;
  if (cfg.band_limited) {
    metrics["band_limited_sup"] = sw.band_limited_sup;
    metrics["band_limited_l2"] = sw.band_limited_l2;
    metrics["band_limited_level"] = sw.band_limited_level;
  }
}

void run_selfcheck(const ExperimentConfig&, const SpaceDescriptor&,
                   const RunOptions& opt, json& metrics) {
  json checks = json::array();
  double worst = 0.0;
  auto push = [&](const std::string& name, double got, double want) {
    double defect = std::abs(got - want);
    checks.push_back({{"name", name}, {"defect", defect}});
    worst = std::max(worst, defect);
  };
  SpaceDescriptor b2 = space_descriptor(SpaceModel::poincare_ball, 2);
  SpaceDescriptor b3 = space_descriptor(SpaceModel::poincare_ball, 3);
  SpaceDescriptor dk = space_descriptor(SpaceModel::poincare_disk_su11, 2);
  VecD o = VecD::Zero(2), x = VecD::Zero(2), u = VecD::Zero(2);
  x[0] = 0.5;
  u[0] = 1.0;
  push("ball_distance_half", poincare_ball_distance(o, x), std::log(3.0));
  push("composite_inner", composite_distance(b2, x, u), std::log(3.0));
  VecD xm = -x;
  push("composite_outer", composite_distance(b2, xm, u), -std::log(3.0));
  push("poisson_2d", poisson_weight(b2, x, u), std::sqrt(3.0));
  VecD x3 = VecD::Zero(3), u3 = VecD::Zero(3);
  x3[0] = 0.5;
  u3[0] = 1.0;
  push("poisson_3d", poisson_weight(b3, x3, u3), 3.0);
  push("volume_origin", volume_density(o, 2), 4.0);
  push("volume_half_2d", volume_density(x, 2), 64.0 / 9.0);
  push("volume_half_3d", volume_density(x3, 3), std::pow(8.0 / 3.0, 3));
  push("density_2d", plancherel_density(b2, 1.0), M_PI * std::tanh(M_PI));
  push("density_3d", plancherel_density(b3, 2.0), 4.0);
  push("density_disk", plancherel_density(dk, 1.0),
       0.5 * M_PI * std::tanh(0.5 * M_PI));
  double t = 0.7;
  MobiusElement at{Complex(std::cosh(t), 0.0), Complex(std::sinh(t), 0.0)};
  push("mobius_boost", std::abs(mobius_apply(at, Complex(0.0)) -
                                Complex(std::tanh(t))), 0.0);
  double phi = 0.4;
  MobiusElement kphi{Complex(std::cos(phi), std::sin(phi)), Complex(0.0)};
  Complex z(0.3, 0.1);
  push("mobius_rotation",
       std::abs(mobius_apply(kphi, z) - std::exp(Complex(0.0, 2.0 * phi)) * z),
       0.0);
  metrics["checks"] = std::move(checks);
  metrics["worst_defect"] = worst;
  note(opt, "worst defect " + std::to_string(worst));
  if (worst > 1e-9) throw NumericalError("selfcheck: frozen example mismatch");
}

}  // namespace

int run_experiment(const RunOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  try {
    ExperimentConfig cfg =
        opt.config_path.empty() ? ExperimentConfig{} : load_config(opt.config_path);
    if (opt.threads > 0) cfg.threads = opt.threads;
    validate_config(cfg);
    SpaceDescriptor sp = parse_space(cfg.space, cfg.dim);
    std::filesystem::create_directories(opt.out_dir);
    json metrics;
    const std::string& sub = opt.subcommand;
    if (sub == "transform") run_transform(cfg, sp, opt, metrics);
    else if (sub == "plancherel") run_plancherel(cfg, sp, opt, metrics);
    else if (sub == "reconstruct") run_reconstruct(cfg, sp, opt, metrics);
    else if (sub == "ridgelet-dump") run_ridgelet_dump(cfg, sp, opt, metrics);
    else if (sub == "universality") run_universality(cfg, sp, opt, metrics);
    else if (sub == "selfcheck") run_selfcheck(cfg, sp, opt, metrics);
    else throw ConfigError("unknown subcommand '" + sub + "'");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    write_report_json(opt.out_dir + "/report.json", sub, cfg, metrics, secs);
    std::cout << sub << ": ok, report at " << opt.out_dir << "/report.json\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace horolet
