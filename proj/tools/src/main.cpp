#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "surfpoisson/cli.hpp"
#include "surfpoisson/parallel.hpp"

namespace {

using CommandFn = int (*)(const surfpoisson::RunConfig&, std::ostream&, bool);

struct SubOptions {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  bool quiet = false;
};

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("SURFPOISSON_THREADS"))
    surfpoisson::set_worker_cap(std::atoi(env));

  CLI::App app{
      "Poisson problems, divergence-constrained vector fields and geometric "
      "identity checks on parametrized surface patches"};
  app.set_version_flag("--version", surfpoisson::tool_version());
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> descriptions = {
      {"validate", "sample the chart metric and report nondegeneracy estimates"},
      {"solve", "solve the zero co-normal Poisson problem for the configured load"},
      {"divfield", "construct V with div_Gamma V = F and V.n = chi"},
      {"identities", "run the divergence-theorem / integration-by-parts battery"},
      {"convergence", "manufactured-solution refinement study"},
      {"eigen", "estimate the Poincare constant and check coercivity"}};
  const std::vector<CommandFn> commands = {
      surfpoisson::cmd_validate, surfpoisson::cmd_solve,      surfpoisson::cmd_divfield,
      surfpoisson::cmd_identities, surfpoisson::cmd_convergence, surfpoisson::cmd_eigen};

  int exit_code = surfpoisson::kExitOk;
  for (size_t k = 0; k < commands.size(); ++k) {
    auto opts = std::make_shared<SubOptions>();
    CLI::App* cmd = app.add_subcommand(descriptions[k].first, descriptions[k].second);
    cmd->add_option("--config", opts->config, "JSON run configuration file")->required();
    cmd->add_option("--out", opts->out, "output directory (overrides the config)");
    cmd->add_option("--seed", opts->seed, "RNG seed (overrides the config)");
    cmd->add_flag("--quiet", opts->quiet, "suppress informational output");
    const CommandFn fn = commands[k];
    cmd->callback([opts, fn, cmd, &exit_code]() {
      try {
        surfpoisson::RunConfig cfg = surfpoisson::load_run_config(opts->config);
        if (!opts->out.empty()) cfg.output_dir = opts->out;
        if (cmd->count("--seed") > 0) cfg.seed = opts->seed;
        exit_code = fn(cfg, std::cout, opts->quiet);
      } catch (const surfpoisson::ConfigError& err) {
        std::cout << "error: " << err.what() << "\n";
        exit_code = surfpoisson::kExitConfig;
      }
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return surfpoisson::kExitConfig;
  }
  return exit_code;
}
