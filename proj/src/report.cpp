#include "horolet/io.hpp"

#include <Eigen/Core>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace horolet {

namespace {

double need_num(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config." + key + ": expected a number");
  return v.get<double>();
}

int need_int(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer())
    throw ConfigError("config." + key + ": expected an integer");
  return v.get<int>();
}

std::string need_str(const nlohmann::json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("config." + key + ": expected a string");
  return v.get<std::string>();
}

bool need_bool(const nlohmann::json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError("config." + key + ": expected a boolean");
  return v.get<bool>();
}

std::string num(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void check(bool ok, const char* msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  ExperimentConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "space") c.space = need_str(v, key);
    else if (key == "dim") c.dim = need_int(v, key);
    else if (key == "target") c.target = need_str(v, key);
    else if (key == "sigma") c.sigma = need_str(v, key);
    else if (key == "sigma_fd_order") c.sigma_fd_order = need_int(v, key);
    else if (key == "sigma_fd_step") c.sigma_fd_step = need_num(v, key);
    else if (key == "rho0") c.rho0 = need_str(v, key);
    else if (key == "rho0_shift") c.rho0_shift = need_num(v, key);
    else if (key == "lambda_max") c.lambda_max = need_num(v, key);
    else if (key == "n_freq") c.n_freq = need_int(v, key);
    else if (key == "n_boundary") c.n_boundary = need_int(v, key);
    else if (key == "ball_radius") c.ball_radius = need_num(v, key);
    else if (key == "n_radial") c.n_radial = need_int(v, key);
    else if (key == "n_angular") c.n_angular = need_int(v, key);
    else if (key == "box_half") c.box_half = need_num(v, key);
    else if (key == "n_axis") c.n_axis = need_int(v, key);
    else if (key == "a_min") c.a_min = need_num(v, key);
    else if (key == "a_max") c.a_max = need_num(v, key);
    else if (key == "n_scale") c.n_scale = need_int(v, key);
    else if (key == "b_max") c.b_max = need_num(v, key);
    else if (key == "n_bias") c.n_bias = need_int(v, key);
    else if (key == "n_probes") c.n_probes = need_int(v, key);
    else if (key == "probe_radius") c.probe_radius = need_num(v, key);
    else if (key == "probe_half") c.probe_half = need_num(v, key);
    else if (key == "band_limited") c.band_limited = need_bool(v, key);
    else if (key == "normalization") c.normalization = need_num(v, key);
    else if (key == "seed") {
      if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ConfigError("config.seed: expected a nonnegative integer");
      c.seed = v.get<unsigned long>();
    } else if (key == "threads") c.threads = need_int(v, key);
    else if (key == "schedule") {
      if (!v.is_array())
        throw ConfigError("config.schedule: expected an array of {delta, n}");
      c.schedule.clear();
      for (const auto& e : v) {
        if (!e.is_object() || !e.contains("delta") || !e.contains("n"))
          throw ConfigError("config.schedule: each entry needs delta and n");
        SweepStep s;
        s.delta = need_num(e.at("delta"), "schedule.delta");
        s.n = need_int(e.at("n"), "schedule.n");
        c.schedule.push_back(s);
      }
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

void validate_config(const ExperimentConfig& c) {
  check(c.dim >= 1, "config.dim: must be >= 1");
  if (c.space == "spd") check(c.dim >= 2, "config.dim: spd needs dim >= 2");
  check(c.lambda_max > 0, "config.lambda_max: must be positive");
  check(c.n_freq >= 2, "config.n_freq: must be >= 2");
  check(c.n_boundary >= 2, "config.n_boundary: must be >= 2");
  check(c.ball_radius > 0 && c.ball_radius < 1,
        "config.ball_radius: must lie in (0, 1)");
  check(c.n_radial >= 2, "config.n_radial: must be >= 2");
  check(c.n_angular >= 4, "config.n_angular: must be >= 4");
  check(c.box_half > 0, "config.box_half: must be positive");
  check(c.n_axis >= 2, "config.n_axis: must be >= 2");
  if (c.space == "euclidean") {
    double total = std::pow(static_cast<double>(c.n_axis), c.dim);
    check(total <= 2.0e7, "config.n_axis: integration grid too large");
  }
  check(c.a_min > 0, "config.a_min: must be positive");
  check(c.a_max > c.a_min, "config.a_max: must exceed a_min");
  check(c.n_scale >= 1, "config.n_scale: must be >= 1");
  check(c.b_max > 0, "config.b_max: must be positive");
  check(c.n_bias >= 2, "config.n_bias: must be >= 2");
  check(c.n_probes >= 1, "config.n_probes: must be >= 1");
  check(c.probe_radius > 0 && c.probe_radius < 1,
        "config.probe_radius: must lie in (0, 1)");
  check(c.probe_half > 0, "config.probe_half: must be positive");
  check(c.sigma_fd_order >= 0, "config.sigma_fd_order: must be >= 0");
  check(c.sigma_fd_step > 0, "config.sigma_fd_step: must be positive");
  check(c.threads >= 1, "config.threads: must be >= 1");
  for (const SweepStep& s : c.schedule) {
    check(s.delta > 0, "config.schedule: delta must be positive");
    check(s.n >= 1, "config.schedule: n must be >= 1");
  }
}

nlohmann::json config_echo(const ExperimentConfig& c) {
  nlohmann::json j;
  j["space"] = c.space;
  j["dim"] = c.dim;
  j["target"] = c.target;
  j["sigma"] = c.sigma;
  j["sigma_fd_order"] = c.sigma_fd_order;
  j["sigma_fd_step"] = c.sigma_fd_step;
  j["rho0"] = c.rho0;
  j["rho0_shift"] = c.rho0_shift;
  j["lambda_max"] = c.lambda_max;
  j["n_freq"] = c.n_freq;
  j["n_boundary"] = c.n_boundary;
  j["ball_radius"] = c.ball_radius;
  j["n_radial"] = c.n_radial;
  j["n_angular"] = c.n_angular;
  j["box_half"] = c.box_half;
  j["n_axis"] = c.n_axis;
  j["a_min"] = c.a_min;
  j["a_max"] = c.a_max;
  j["n_scale"] = c.n_scale;
  j["b_max"] = c.b_max;
  j["n_bias"] = c.n_bias;
  j["n_probes"] = c.n_probes;
  j["probe_radius"] = c.probe_radius;
  j["probe_half"] = c.probe_half;
  j["band_limited"] = c.band_limited;
  j["normalization"] = c.normalization;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  nlohmann::json sched = nlohmann::json::array();
  for (const SweepStep& s : c.schedule)
    sched.push_back({{"delta", s.delta}, {"n", s.n}});
  j["schedule"] = sched;
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("io: cannot write '" + path + "'");
  out << content;
}

void write_spectra_csv(const std::string& path, const SpectralFunction& F) {
  int r = F.freq.rank();
  int p = static_cast<int>(F.boundary.points.rows());
  std::string s;
  for (int d = 0; d < r; ++d) s += "lambda_" + std::to_string(d + 1) + ",";
  for (int d = 0; d < p; ++d) s += "u_" + std::to_string(d + 1) + ",";
  s += "re,im\n";
  for (int k = 0; k < F.freq.size(); ++k)
    for (int u = 0; u < F.boundary.size(); ++u) {
      for (int d = 0; d < r; ++d) s += num("%.12e", F.freq.nodes(d, k)) + ",";
      for (int d = 0; d < p; ++d) s += num("%.12e", F.boundary.points(d, u)) + ",";
      s += num("%.12e", F.values(k, u).real()) + ",";
      s += num("%.12e", F.values(k, u).imag()) + "\n";
    }
  write_text_file(path, s);
}

void write_errors_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::string s = "delta,n_level,atoms,sup_error,l2_error,seconds\n";
  for (const SweepRow& r : rows) {
    s += num("%.6f", r.delta) + "," + std::to_string(r.n_level) + "," +
         std::to_string(r.atoms) + "," + num("%.9e", r.sup_error) + "," +
         num("%.9e", r.l2_error) + "," + num("%.6f", 0.0) + "\n";
  }
  write_text_file(path, s);
}

void write_ridgelet_csv(const std::string& path, const VecD& a_nodes,
                        const BoundaryGrid& bnd, const Grid1& bias,
                        const std::vector<MatC>& per_u) {
  if (static_cast<int>(per_u.size()) != bnd.size())
    throw ConfigError("ridgelet csv: one block per boundary node required");
  int p = static_cast<int>(bnd.points.rows());
  std::string s = "a_1,";
  for (int d = 0; d < p; ++d) s += "u_" + std::to_string(d + 1) + ",";
  s += "b,re,im\n";
  for (int ia = 0; ia < a_nodes.size(); ++ia)
    for (int j = 0; j < bnd.size(); ++j)
      for (int ib = 0; ib < bias.size(); ++ib) {
        s += num("%.12e", a_nodes[ia]) + ",";
        for (int d = 0; d < p; ++d) s += num("%.12e", bnd.points(d, j)) + ",";
        s += num("%.12e", bias.nodes[ib]) + ",";
        s += num("%.12e", per_u[j](ia, ib).real()) + ",";
        s += num("%.12e", per_u[j](ia, ib).imag()) + "\n";
      }
  write_text_file(path, s);
}

void write_network_json(const std::string& path, const FiniteNetwork& net) {
  nlohmann::json j;
  j["space"] = net.space.tag();
  j["dim"] = net.space.m;
  j["sigma"] = net.sigma ? net.sigma->tag : "";
  j["n_atoms"] = net.size();
  nlohmann::json atoms = nlohmann::json::array();
  for (const ParamAtom& at : net.gamma.atoms) {
    nlohmann::json a;
    a["c"] = {at.c.real(), at.c.imag()};
    a["a"] = std::vector<double>(at.a.data(), at.a.data() + at.a.size());
    a["u"] = std::vector<double>(at.u.data(), at.u.data() + at.u.size());
    a["b"] = at.b;
    atoms.push_back(std::move(a));
  }
  j["atoms"] = std::move(atoms);
  write_text_file(path, j.dump(2) + "\n");
}

void write_report_json(const std::string& path, const std::string& subcommand,
                       const ExperimentConfig& cfg, const nlohmann::json& metrics,
                       double seconds) {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["config"] = config_echo(cfg);
  j["metrics"] = metrics;
  j["seconds"] = seconds;
  j["versions"] = {
      {"compiler", __VERSION__},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
  };
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace horolet
