#include "posgen/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "posgen/instances.hpp"
#include "posgen/random.hpp"

namespace posgen::cli {

void RunConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("--tol must be positive");
  if (samples < 1) throw std::invalid_argument("--samples must be >= 1");
  if (probes < 0) throw std::invalid_argument("probe count must be >= 0");
  if (t_grid.empty()) throw std::invalid_argument("--t-grid must not be empty");
  for (double t : t_grid)
    if (!(t >= 0.0)) throw std::invalid_argument("--t-grid values must be >= 0");
  for (double l : lambda_grid)
    if (!(l > 0.0)) throw std::invalid_argument("--lambda-grid values must be positive");
  if (format != "json" && format != "text") throw std::invalid_argument("--format must be json or text");
  if (n < 1) throw std::invalid_argument("-n must be >= 1");
  if (threads < 1) throw std::invalid_argument("--threads must be >= 1");
}

CriteriaConfig RunConfig::criteria() const {
  CriteriaConfig c;
  c.t_grid = t_grid;
  c.lambda_grid = lambda_grid;
  c.n_selfadjoint = probes;
  c.n_unitary = probes;
  c.seed = seed;
  c.budget.n_random = samples;
  c.budget.seed = seed;
  c.tol = tol;
  c.symmetry_tol = tol;
  return c;
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open config file");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  if (!j.is_object()) throw SchemaError(path + ": config must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const Json& v = it.value();
    try {
      if (key == "tol") config.tol = v.get<double>();
      else if (key == "seed") config.seed = v.get<std::uint64_t>();
      else if (key == "samples") config.samples = v.get<int>();
      else if (key == "probes") config.probes = v.get<int>();
      else if (key == "lambda_grid") config.lambda_grid = v.get<std::vector<double>>();
      else if (key == "t_grid") config.t_grid = v.get<std::vector<double>>();
      else if (key == "format") config.format = v.get<std::string>();
      else if (key == "n") config.n = v.get<Eigen::Index>();
      else if (key == "k") config.k = v.get<int>();
      else if (key == "scale") config.scale = v.get<double>();
      else if (key == "threads") config.threads = v.get<unsigned>();
      else throw SchemaError(path + ": unknown config key \"" + key + "\"");
    } catch (const Json::type_error& e) {
      throw SchemaError(path + ": config key \"" + key + "\": " + e.what());
    }
  }
}

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

Json tolerances_json(const RunConfig& c) {
  return Json{{"tol", c.tol}, {"symmetry_tol", c.tol}, {"samples", c.samples}, {"probes", c.probes}};
}

void write_text_report(const Json& r, std::ostream& out) {
  out << "theorem 1: ";
  if (!r["theorem1"]["applicable"].get<bool>()) {
    out << "not applicable (" << r["theorem1"]["reason"].get<std::string>() << ")\n";
  } else {
    out << (r["theorem1"]["consistency"].get<bool>() ? "consistent" : "INCONSISTENT") << "\n";
    for (const auto& c : r["theorem1"]["conditions"])
      out << "  condition " << std::setw(4) << std::left << c["id"].get<std::string>() << " "
          << std::setw(12) << c["verdict"].get<std::string>() << " min_margin " << c["min_margin"].get<double>()
          << "\n";
  }
  out << "theorem 2: ";
  if (!r["theorem2"]["applicable"].get<bool>())
    out << "not applicable (" << r["theorem2"]["reason"].get<std::string>() << ")\n";
  else
    out << (r["theorem2"]["direction_consistency"].get<bool>() ? "consistent" : "INCONSISTENT")
        << " L(1) margin " << r["theorem2"]["unit_in_domain_L1_zero"].get<double>() << ", positivity "
        << r["theorem2"]["positive"]["status"].get<std::string>() << "\n";
  out << "kossakowski: " << (r["kossakowski"]["equivalence_consistent"].get<bool>() ? "consistent" : "INCONSISTENT")
      << " trace margin " << r["kossakowski"]["trace_preserving_margin"].get<double>() << ", L(1) margin "
      << r["kossakowski"]["L1_zero_margin"].get<double>() << "\n";
  out << "overall: " << (r["consistent"].get<bool>() ? "consistent" : "INCONSISTENT") << "\n";
}

}  // namespace

InstanceEvaluation evaluate_instance(const GeneratorSpec& spec, const RunConfig& config) {
  const SemigroupHandle h(spec);
  const CriteriaConfig cc = config.criteria();
  InstanceEvaluation ev;
  Json& r = ev.report;
  r["instance"] = generator_to_json(spec);

  Json t1;
  try {
    const Theorem1Report rep = theorem1_report(h, cc);
    t1 = theorem1_to_json(rep);
    t1["applicable"] = true;
    ev.consistent &= rep.consistency_flag;
  } catch (const HypothesisViolation& e) {
    t1 = Json{{"applicable", false}, {"reason", e.what()}};
  }
  // Theorem 1 fields also sit at the top level of the report.
  r["conditions"] = t1.contains("conditions") ? t1["conditions"] : Json::array();
  r["consistency"] = t1.value("consistency", true);
  r["theorem1"] = std::move(t1);

  Json t2;
  try {
    const Theorem2Report rep = theorem2_check(h, cc);
    t2 = theorem2_to_json(rep);
    t2["applicable"] = true;
    ev.consistent &= rep.direction_consistency;
  } catch (const HypothesisViolation& e) {
    t2 = Json{{"applicable", false}, {"reason", e.what()}};
  }
  r["theorem2"] = std::move(t2);

  const KossakowskiProbes probes = make_kossakowski_probes(spec.dim(), config.probes, 20, config.seed);
  const KossakowskiReport kr = kossakowski_check(spec.generator(), probes, config.t_grid, config.tol);
  r["kossakowski"] = kossakowski_to_json(kr);
  ev.consistent &= kr.equivalence_consistent;

  r["tolerances"] = tolerances_json(config);
  r["consistent"] = ev.consistent;
  return ev;
}

int cmd_report(const std::string& generator_file, const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<GeneratorSpec> spec;
  try {
    config.validate();
    spec = generator_from_json(read_json_file(generator_file));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  const InstanceEvaluation ev = evaluate_instance(*spec, config);
  if (config.format == "text")
    write_text_report(ev.report, out);
  else
    out << ev.report.dump(2) << "\n";
  return ev.consistent ? kExitOk : kExitInconsistent;
}

int cmd_fuzz(const std::string& family, int count, const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    if (!is_known_family(family)) throw std::invalid_argument("unknown family '" + family + "'");
    if (count < 0) throw std::invalid_argument("count must be >= 0");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  std::vector<InstanceRecipe> recipes;
  for (int i = 0; i < count; ++i)
    recipes.push_back({family, config.n, derive_seed(config.seed, stream_tag::kRecipe, i), config.k, config.scale});

  std::vector<Json> records(recipes.size());
  std::vector<int> consistent(recipes.size(), 0);
  std::vector<std::string> failures(recipes.size());
  auto work = [&](std::size_t i) {
    try {
      const InstanceEvaluation ev = evaluate_instance(make_instance(recipes[i]), config);
      Json rec;
      rec["index"] = i;
      rec["seed"] = recipes[i].seed;
      rec["consistent"] = ev.consistent;
      Json verdicts = Json::object();
      for (const auto& c : ev.report["conditions"])
        verdicts[c["id"].get<std::string>()] = {{"verdict", c["verdict"]}, {"min_margin", c["min_margin"]}};
      rec["theorem1"] = verdicts;
      rec["theorem2_consistent"] = ev.report["theorem2"].value("direction_consistency", true);
      rec["kossakowski_consistent"] = ev.report["kossakowski"]["equivalence_consistent"];
      records[i] = std::move(rec);
      consistent[i] = ev.consistent ? 1 : 0;
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  };

  const unsigned threads = std::min<unsigned>(config.threads, std::max<std::size_t>(recipes.size(), 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < recipes.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < recipes.size(); i += threads) work(i);
      });
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < failures.size(); ++i)
    if (!failures[i].empty()) {
      err << "error: instance " << i << ": " << failures[i] << "\n";
      return kExitInputError;
    }

  // Emission is in recipe order whatever the scheduling was.
  std::map<std::string, double> worst;
  int inconsistencies = 0;
  Json instances = Json::array();
  for (std::size_t i = 0; i < records.size(); ++i) {
    inconsistencies += consistent[i] ? 0 : 1;
    for (auto it = records[i]["theorem1"].begin(); it != records[i]["theorem1"].end(); ++it) {
      const double m = it.value()["min_margin"].get<double>();
      auto [pos, inserted] = worst.emplace(it.key(), m);
      if (!inserted) pos->second = std::min(pos->second, m);
    }
    instances.push_back(std::move(records[i]));
  }
  Json summary;
  summary["family"] = family;
  summary["n"] = config.n;
  summary["count"] = count;
  summary["seed"] = config.seed;
  summary["inconsistencies"] = inconsistencies;
  Json wm = Json::object();
  for (ConditionId id : all_conditions())
    if (worst.count(to_string(id))) wm[to_string(id)] = worst[to_string(id)];
  summary["worst_margins"] = std::move(wm);
  summary["tolerances"] = tolerances_json(config);
  summary["instances"] = std::move(instances);

  if (config.format == "text") {
    out << "family " << family << " n=" << config.n << " count=" << count << " inconsistencies=" << inconsistencies
        << "\n";
    for (auto it = summary["worst_margins"].begin(); it != summary["worst_margins"].end(); ++it)
      out << "  condition " << it.key() << " worst margin " << it.value().get<double>() << "\n";
  } else {
    out << summary.dump(2) << "\n";
  }
  return inconsistencies == 0 ? kExitOk : kExitInconsistent;
}

int cmd_instance(const std::string& family, const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    if (!is_known_family(family)) throw std::invalid_argument("unknown family '" + family + "'");
    const GeneratorSpec spec = make_instance({family, config.n, config.seed, config.k, config.scale});
    out << generator_to_json(spec).dump(2) << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_evolve(const std::string& generator_file, const std::string& state_file, const std::vector<double>& t_list,
               std::ostream& out, std::ostream& err) {
  std::optional<GeneratorSpec> spec;
  std::optional<DensityMatrix> rho;
  try {
    spec = generator_from_json(read_json_file(generator_file));
    rho = density_from_json(read_json_file(state_file), state_file);
    if (rho->dim() != spec->dim()) throw SchemaError(state_file + ": state dimension differs from generator");
    if (t_list.empty()) throw std::invalid_argument("--t-list must not be empty");
    for (double t : t_list)
      if (!(t >= 0.0)) throw std::invalid_argument("--t-list values must be >= 0");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  const SemigroupHandle predual(predual_generator(spec->generator()));
  for (double t : t_list) {
    const CMatrix rho_t = predual_evolve(predual, t, rho->matrix());
    Json rec;
    rec["t"] = t;
    rec["rho"] = cmatrix_to_json(rho_t);
    rec["trace"] = rho_t.trace().real();
    rec["min_eig"] = min_hermitian_eig(rho_t);
    rec["purity"] = (rho_t * rho_t).trace().real();
    out << rec.dump() << "\n";
  }
  return kExitOk;
}

}  // namespace posgen::cli
