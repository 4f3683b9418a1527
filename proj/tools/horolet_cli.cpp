#include <string>

#include "CLI11.hpp"
#include "horolet/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ridgelet transform pipelines on noncompact symmetric spaces"};
  horolet::RunOptions opt;
  app.add_option("subcommand", opt.subcommand,
                 "transform | plancherel | reconstruct | ridgelet-dump | "
                 "universality | selfcheck")
      ->required();
  app.add_option("--config", opt.config_path, "JSON configuration file");
  app.add_option("--out", opt.out_dir, "output directory")->capture_default_str();
  app.add_option("--threads", opt.threads,
                 "worker threads (overrides the config value)");
  app.add_flag("--verbose", opt.verbose, "print progress to stderr");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return horolet::run_experiment(opt);
}
