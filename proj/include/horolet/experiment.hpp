#pragma once

#include <string>

#include "horolet/io.hpp"

namespace horolet {

struct RunOptions {
  std::string subcommand;   // transform | plancherel | reconstruct |
                            // ridgelet-dump | universality | selfcheck
  std::string config_path;  // empty: built-in defaults
  std::string out_dir = "out";
  int threads = 0;  // 0: take the config value
  bool verbose = false;
};

// returns a process exit code: 0 ok, 2 configuration error, 3 numerical error
int run_experiment(const RunOptions& opt);

}  // namespace horolet
