#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "posgen/criteria.hpp"
#include "posgen/json_io.hpp"

namespace posgen::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInconsistent = 2;

struct RunConfig {
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  int samples = 200;
  int probes = 50;
  std::vector<double> lambda_grid;  // empty: derived from the spectral abscissa
  std::vector<double> t_grid = {0.1, 1.0, 10.0};
  std::string format = "json";
  Eigen::Index n = 2;
  int k = 1;
  double scale = 4.0;
  unsigned threads = 1;

  /// Throws std::invalid_argument when a tolerance or grid is unusable.
  void validate() const;
  CriteriaConfig criteria() const;
};

/// Overlays the keys present in a JSON config file on top of `config`.
void apply_config_file(RunConfig& config, const std::string& path);

/// The full per-instance evaluation behind `report` and `fuzz`.
struct InstanceEvaluation {
  Json report;
  bool consistent = true;
};
InstanceEvaluation evaluate_instance(const GeneratorSpec& spec, const RunConfig& config);

int cmd_report(const std::string& generator_file, const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_fuzz(const std::string& family, int count, const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_instance(const std::string& family, const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_evolve(const std::string& generator_file, const std::string& state_file, const std::vector<double>& t_list,
               std::ostream& out, std::ostream& err);

}  // namespace posgen::cli
