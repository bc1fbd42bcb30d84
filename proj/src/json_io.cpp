#include "posgen/json_io.hpp"

#include <set>

namespace posgen {

namespace {

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "." + key + ": missing field");
  return *it;
}

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw SchemaError(path + "." + it.key() + ": unknown field");
}

Eigen::Index read_dim(const Json& j, const std::string& path) {
  const Json& n = field(j, "n", path);
  if (!n.is_number_integer() || n.get<long long>() < 1) throw SchemaError(path + ".n: expected a positive integer");
  return static_cast<Eigen::Index>(n.get<long long>());
}

Json real_rows(const CMatrix& m, bool imag) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(imag ? m(i, j).imag() : m(i, j).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json cmatrix_to_json(const CMatrix& m) {
  Json j;
  j["n"] = m.rows();
  j["re"] = real_rows(m, false);
  j["im"] = real_rows(m, true);
  return j;
}

CMatrix cmatrix_from_json(const Json& j, const std::string& path) {
  const Eigen::Index n = read_dim(j, path);
  reject_unknown(j, {"n", "re", "im"}, path);
  CMatrix m(n, n);
  for (const char* part : {"re", "im"}) {
    const std::string p = path + "." + part;
    const Json& rows = field(j, part, path);
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) throw SchemaError(p + ": expected n rows");
    for (Eigen::Index i = 0; i < n; ++i) {
      const Json& row = rows[i];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
        throw SchemaError(p + "[" + std::to_string(i) + "]: expected n entries");
      for (Eigen::Index k = 0; k < n; ++k) {
        if (!row[k].is_number()) throw SchemaError(p + "[" + std::to_string(i) + "][" + std::to_string(k) + "]: expected a number");
        const double x = row[k].get<double>();
        if (part[0] == 'r')
          m(i, k) = Complex(x, 0.0);
        else
          m(i, k) += Complex(0.0, x);
      }
    }
  }
  if (!all_finite(m)) throw SchemaError(path + ": non-finite entries");
  return m;
}

Json superop_to_json(const Superoperator& s) {
  Json j;
  j["n"] = s.dim();
  j["rep"] = cmatrix_to_json(s.rep());
  j["vec"] = "column-stacking";
  return j;
}

Superoperator superop_from_json(const Json& j, const std::string& path) {
  const Eigen::Index n = read_dim(j, path);
  reject_unknown(j, {"n", "rep", "vec"}, path);
  const Json& v = field(j, "vec", path);
  if (!v.is_string() || v.get<std::string>() != "column-stacking")
    throw SchemaError(path + ".vec: only \"column-stacking\" is supported");
  CMatrix rep = cmatrix_from_json(field(j, "rep", path), path + ".rep");
  if (rep.rows() != n * n) throw SchemaError(path + ".rep: expected an n^2 x n^2 matrix");
  return Superoperator(n, std::move(rep));
}

Json generator_to_json(const GeneratorSpec& spec) {
  Json j;
  j["n"] = spec.dim();
  j["kind"] = to_string(spec.kind());
  switch (spec.kind()) {
    case GeneratorKind::explicit_map: j["superop"] = superop_to_json(spec.generator()); break;
    case GeneratorKind::hamiltonian: j["H"] = cmatrix_to_json(spec.hamiltonian()); break;
    case GeneratorKind::lindblad: {
      j["H"] = cmatrix_to_json(spec.hamiltonian());
      Json vs = Json::array();
      for (const auto& v : spec.jumps()) vs.push_back(cmatrix_to_json(v));
      j["V"] = std::move(vs);
      break;
    }
  }
  return j;
}

GeneratorSpec generator_from_json(const Json& j, const std::string& path) {
  const Eigen::Index n = read_dim(j, path);
  reject_unknown(j, {"n", "kind", "superop", "H", "V"}, path);
  const Json& kind = field(j, "kind", path);
  if (!kind.is_string()) throw SchemaError(path + ".kind: expected a string");
  const std::string k = kind.get<std::string>();
  auto check_dim = [&](Eigen::Index got, const std::string& p) {
    if (got != n) throw SchemaError(p + ": dimension " + std::to_string(got) + " differs from n = " + std::to_string(n));
  };
  try {
    if (k == "explicit") {
      if (j.contains("H") || j.contains("V")) throw SchemaError(path + ": explicit generators take only \"superop\"");
      Superoperator s = superop_from_json(field(j, "superop", path), path + ".superop");
      check_dim(s.dim(), path + ".superop");
      return GeneratorSpec::from_superop(std::move(s));
    }
    if (k == "hamiltonian" || k == "lindblad") {
      if (j.contains("superop")) throw SchemaError(path + ".superop: not allowed for kind \"" + k + "\"");
      CMatrix h = cmatrix_from_json(field(j, "H", path), path + ".H");
      check_dim(h.rows(), path + ".H");
      if (k == "hamiltonian") {
        if (j.contains("V")) throw SchemaError(path + ".V: not allowed for kind \"hamiltonian\"");
        return GeneratorSpec::from_hamiltonian(h);
      }
      std::vector<CMatrix> jumps;
      if (j.contains("V")) {
        const Json& vs = j["V"];
        if (!vs.is_array()) throw SchemaError(path + ".V: expected an array");
        for (std::size_t i = 0; i < vs.size(); ++i) {
          const std::string p = path + ".V[" + std::to_string(i) + "]";
          jumps.push_back(cmatrix_from_json(vs[i], p));
          check_dim(jumps.back().rows(), p);
        }
      }
      return GeneratorSpec::from_lindblad(h, std::move(jumps));
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
  throw SchemaError(path + ".kind: expected \"explicit\", \"hamiltonian\" or \"lindblad\", got \"" + k + "\"");
}

DensityMatrix density_from_json(const Json& j, const std::string& path) {
  CMatrix rho = cmatrix_from_json(j, path);
  try {
    return DensityMatrix(std::move(rho));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

Json cone_verdict_to_json(const ConeVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["margin"] = v.margin;
  j["samples_used"] = v.samples_used;
  if (v.witness) {
    Json w = Json::array();
    for (Eigen::Index i = 0; i < v.witness->size(); ++i) w.push_back({(*v.witness)(i).real(), (*v.witness)(i).imag()});
    j["witness"] = std::move(w);
  }
  return j;
}

Json contraction_to_json(const ContractionVerdict& v) {
  return Json{{"status", to_string(v.status)}, {"norm_lower_bound", v.norm_lower_bound}};
}

Json condition_to_json(const ConditionResult& r) {
  Json j;
  j["id"] = to_string(r.id);
  j["grid"] = r.grid;
  j["min_margin"] = r.min_margin;
  j["verdict"] = to_string(r.verdict);
  Json wp;
  wp["label"] = r.worst_probe.label;
  wp["grid_value"] = r.worst_probe.grid_value;
  if (r.worst_probe.s_value) wp["s"] = *r.worst_probe.s_value;
  if (r.worst_probe.matrix.size() > 0) wp["matrix"] = cmatrix_to_json(r.worst_probe.matrix);
  j["worst_probe"] = std::move(wp);
  return j;
}

Json theorem1_to_json(const Theorem1Report& r) {
  Json j;
  Json conds = Json::array();
  for (const auto& c : r.conditions) conds.push_back(condition_to_json(c));
  j["conditions"] = std::move(conds);
  j["consistency"] = r.consistency_flag;
  j["symmetry_margin"] = r.symmetry_margin;
  j["lambda_grid"] = r.grids.lambdas;
  j["t_grid"] = r.grids.times;
  j["s_grid"] = r.grids.s_values;
  j["tolerances"] = Json{{"tol", r.tol}};
  return j;
}

Json theorem2_to_json(const Theorem2Report& r) {
  Json j;
  j["unit_in_domain_L1_zero"] = r.l1_zero_margin;
  j["symmetric"] = r.symmetric_margin;
  j["contraction"] = contraction_to_json(r.contraction);
  j["positive"] = cone_verdict_to_json(r.positive);
  j["unital"] = r.unital_margin;
  j["generator_side"] = r.generator_side;
  j["semigroup_side"] = r.semigroup_side;
  j["direction_consistency"] = r.direction_consistency;
  return j;
}

Json kossakowski_to_json(const KossakowskiReport& r) {
  Json j;
  j["trace_preserving_margin"] = r.trace_preserving_margin;
  j["evolution_scale"] = r.evolution_scale;
  j["L1_zero_margin"] = r.l1_zero_margin;
  j["state_positivity"] = {{"min_eig", r.state_positivity.min_eig},
                           {"status", r.state_positivity.violated ? "violated" : "no_violation_found"}};
  j["pairing_margin"] = r.pairing_margin;
  j["equivalence_consistent"] = r.equivalence_consistent;
  return j;
}

}  // namespace posgen
