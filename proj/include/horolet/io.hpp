#pragma once

#include <string>
#include <vector>

#include "horolet/helgason.hpp"
#include "horolet/synthesis.hpp"
#include "horolet/types.hpp"
#include "json.hpp"

namespace horolet {

// one flat key space shared by every subcommand; unused fields keep their
// defaults and are echoed back resolved in report.json
struct ExperimentConfig {
  std::string space = "poincare_ball";
  int dim = 2;
  std::string target = "radial_bump";
  std::string sigma = "tanh";
  int sigma_fd_order = 0;
  double sigma_fd_step = 1.0;
  std::string rho0 = "gaussian_deriv3";
  double rho0_shift = 0.0;
  double lambda_max = 60.0;
  int n_freq = 320;
  int n_boundary = 64;
  double ball_radius = 0.95;  // hyperbolic integration grid
  int n_radial = 160;         // also the per-axis count of the spd grid
  int n_angular = 192;
  double box_half = 10.0;  // Euclidean integration grid
  int n_axis = 2049;
  double a_min = 0.05;  // scale / bias quadrature of the continuous pipeline
  double a_max = 8.0;
  int n_scale = 24;  // per sign
  double b_max = 12.0;
  int n_bias = 256;
  int n_probes = 17;
  double probe_radius = 0.8;  // hyperbolic probes sit on [0, probe_radius]
  double probe_half = 2.0;    // Euclidean probes on [-probe_half, probe_half]
  std::vector<SweepStep> schedule;
  bool band_limited = false;
  double normalization = 0.0;  // 0: model constant (or self-calibration)
  unsigned long seed = 2026;
  int threads = 1;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
void validate_config(const ExperimentConfig& c);
nlohmann::json config_echo(const ExperimentConfig& c);

void write_text_file(const std::string& path, const std::string& content);

// rows ordered frequency-major, boundary inner; fixed scientific formats so
// reruns are byte-comparable
void write_spectra_csv(const std::string& path, const SpectralFunction& F);

// the seconds column is pinned to zero to keep reruns byte-identical; wall
// times live in report.json
void write_errors_csv(const std::string& path, const std::vector<SweepRow>& rows);

// per_u[j] holds the (scale, bias) transform block at boundary node j
void write_ridgelet_csv(const std::string& path, const VecD& a_nodes,
                        const BoundaryGrid& bnd, const Grid1& bias,
                        const std::vector<MatC>& per_u);

void write_network_json(const std::string& path, const FiniteNetwork& net);

void write_report_json(const std::string& path, const std::string& subcommand,
                       const ExperimentConfig& cfg, const nlohmann::json& metrics,
                       double seconds);

}  // namespace horolet
