// posgen: batch front end for the positive-semigroup criteria.
//
//   posgen report <generator.json>
//   posgen fuzz <family> <count>
//   posgen instance <family>
//   posgen evolve <generator.json> <state.json> --t-list 0,0.5,1

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "posgen/cli.hpp"

namespace {

void add_common_flags(CLI::App* cmd, posgen::cli::RunConfig& cfg, std::string& config_file) {
  cmd->add_option("--tol", cfg.tol, "Tolerance for every predicate");
  cmd->add_option("--seed", cfg.seed, "Seed for probes and sampling");
  cmd->add_option("--samples", cfg.samples, "Random samples per positivity/contraction search");
  cmd->add_option("--probes", cfg.probes, "Random self-adjoint and unitary probes per condition");
  cmd->add_option("--lambda-grid", cfg.lambda_grid, "Resolvent parameters (default: {1,10,100}*max(1, abscissa+1))")
      ->delimiter(',');
  cmd->add_option("--t-grid", cfg.t_grid, "Times for semigroup-level checks")->delimiter(',');
  cmd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--config", config_file, "JSON config file; its keys override flags");
}

void add_recipe_flags(CLI::App* cmd, posgen::cli::RunConfig& cfg) {
  cmd->add_option("-n", cfg.n, "Algebra dimension");
  cmd->add_option("-k", cfg.k, "Number of jump operators");
  cmd->add_option("--scale", cfg.scale, "Generator norm scale");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of the characterizations of positive semigroup generators on M(n)"};
  app.require_subcommand(1);

  posgen::cli::RunConfig cfg;
  std::string config_file;

  std::string generator_file;
  auto* report = app.add_subcommand("report", "Evaluate every criterion for one generator");
  report->add_option("generator", generator_file, "GeneratorSpec JSON file")->required();
  add_common_flags(report, cfg, config_file);

  std::string family;
  int count = 0;
  auto* fuzz = app.add_subcommand("fuzz", "Run reports over seeded instances of a family");
  fuzz->add_option("family", family, "Instance family")->required();
  fuzz->add_option("count", count, "Number of instances")->required();
  fuzz->add_option("--threads", cfg.threads, "Worker threads");
  add_common_flags(fuzz, cfg, config_file);
  add_recipe_flags(fuzz, cfg);

  auto* instance = app.add_subcommand("instance", "Emit a GeneratorSpec for a recipe");
  instance->add_option("family", family, "Instance family")->required();
  instance->add_option("--seed", cfg.seed, "Recipe seed");
  add_recipe_flags(instance, cfg);

  std::string state_file;
  std::vector<double> t_list;
  auto* evolve = app.add_subcommand("evolve", "Evolve a density matrix with the predual semigroup");
  evolve->add_option("generator", generator_file, "GeneratorSpec JSON file")->required();
  evolve->add_option("state", state_file, "Density matrix JSON file")->required();
  evolve->add_option("--t-list", t_list, "Times")->delimiter(',')->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : posgen::cli::kExitInputError;
  }

  if (!config_file.empty()) {
    try {
      posgen::cli::apply_config_file(cfg, config_file);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return posgen::cli::kExitInputError;
    }
  }

  if (*report) return posgen::cli::cmd_report(generator_file, cfg, std::cout, std::cerr);
  if (*fuzz) return posgen::cli::cmd_fuzz(family, count, cfg, std::cout, std::cerr);
  if (*instance) return posgen::cli::cmd_instance(family, cfg, std::cout, std::cerr);
  return posgen::cli::cmd_evolve(generator_file, state_file, t_list, std::cout, std::cerr);
}
