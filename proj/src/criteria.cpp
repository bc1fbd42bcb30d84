#include "posgen/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "posgen/instances.hpp"
#include "posgen/random.hpp"

namespace posgen {

namespace {

CMatrix projector(const CVector& v) { return v * v.adjoint() / v.squaredNorm(); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

ProbeSet make_probe_set(Eigen::Index n, int n_selfadjoint, int n_unitary, std::uint64_t seed) {
  ProbeSet p;
  p.seed = seed;
  const CMatrix id = identity(n);
  std::vector<Probe> projectors;
  for (Eigen::Index i = 0; i < n; ++i)
    projectors.push_back({"proj[" + std::to_string(i) + "]", matrix_unit(n, i, i)});
  if (n >= 2) {
    CVector plus = CVector::Zero(n);
    plus(0) = 1.0;
    plus(1) = 1.0;
    projectors.push_back({"proj[+01]", projector(plus)});
  }

  p.selfadjoint.push_back({"unit", id});
  p.unitaries.push_back({"unit", id});
  for (const auto& pr : projectors) {
    p.selfadjoint.push_back(pr);
    p.unitaries.push_back({"refl" + pr.label.substr(4), id - 2.0 * pr.matrix});
  }
  for (int k = 0; k < n_selfadjoint; ++k)
    p.selfadjoint.push_back(
        {"gue[" + std::to_string(k) + "]", random_hermitian(n, derive_seed(seed, stream_tag::kProbe, 2 * k))});
  for (int k = 0; k < n_unitary; ++k)
    p.unitaries.push_back(
        {"haar[" + std::to_string(k) + "]", random_unitary(n, derive_seed(seed, stream_tag::kProbe, 2 * k + 1))});
  return p;
}

CMatrix map_dissipation(const Superoperator& s, const CMatrix& a) {
  const CMatrix sa = s.apply(a);
  return s.apply(a * a) + a * s.apply(identity(s.dim())) * a - sa * a - a * sa;
}

CMatrix map_dissipation_unitary(const Superoperator& s, const CMatrix& u) {
  const CMatrix s1 = s.apply(identity(s.dim()));
  return s1 + u.adjoint() * s1 * u - s.apply(u.adjoint()) * u - u.adjoint() * s.apply(u);
}

CMatrix dissipation_resolvent(const SemigroupHandle& h, double lambda, const CMatrix& a) {
  return map_dissipation(resolvent(h, lambda), a);
}

CMatrix dissipation_resolvent_unitary(const SemigroupHandle& h, double lambda, const CMatrix& u) {
  return map_dissipation_unitary(resolvent(h, lambda), u);
}

CMatrix dissipation_semigroup(const SemigroupHandle& h, double t, const CMatrix& a) {
  return map_dissipation(evolve(h, t), a);
}

CMatrix dissipation_semigroup_unitary(const SemigroupHandle& h, double t, const CMatrix& u) {
  return map_dissipation_unitary(evolve(h, t), u);
}

CMatrix eho_dissipation(const Superoperator& l, const CMatrix& a) { return map_dissipation(l, a); }

CMatrix eho_dissipation_unitary(const Superoperator& l, const CMatrix& u) { return map_dissipation_unitary(l, u); }

CMatrix laplace_dissipation(const SemigroupHandle& h, double lambda, const CMatrix& a, const QuadratureConfig& quad) {
  const double abscissa = h.spectral_abscissa();
  if (!(lambda > abscissa + 1e-6))
    throw DecayError("laplace_dissipation: integrand does not decay for lambda = " + fmt(lambda));
  const double t_star = laplace_cutoff(abscissa, lambda, quad.truncation_eps);
  const GaussLegendreRule rule = gauss_legendre(quad.order);
  const double width = t_star / quad.panels;
  CMatrix acc = CMatrix::Zero(h.dim(), h.dim());
  for (int p = 0; p < quad.panels; ++p)
    for (int q = 0; q < quad.order; ++q) {
      const double t = p * width + 0.5 * width * (rule.nodes[q] + 1.0);
      acc += 0.5 * width * rule.weights[q] * std::exp(-lambda * t) * dissipation_semigroup(h, t, a);
    }
  return acc;
}

std::string to_string(ConditionId id) {
  switch (id) {
    case ConditionId::c1: return "1";
    case ConditionId::c2: return "2";
    case ConditionId::c3: return "3";
    case ConditionId::c4: return "4";
    case ConditionId::c5: return "5";
    case ConditionId::c6: return "6";
    case ConditionId::c7: return "7";
    case ConditionId::eho1: return "EHO1";
    case ConditionId::eho2: return "EHO2";
  }
  return "?";
}

const std::vector<ConditionId>& all_conditions() {
  static const std::vector<ConditionId> ids = {ConditionId::c1, ConditionId::c2, ConditionId::c3,
                                               ConditionId::c4, ConditionId::c5, ConditionId::c6,
                                               ConditionId::c7, ConditionId::eho1, ConditionId::eho2};
  return ids;
}

ConditionId condition_from_string(const std::string& s) {
  for (ConditionId id : all_conditions())
    if (to_string(id) == s) return id;
  throw std::invalid_argument("invalid condition id '" + s + "'");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::satisfied: return "satisfied";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

Grids resolve_grids(const SemigroupHandle& h, const CriteriaConfig& config) {
  Grids g;
  g.lambdas = config.lambda_grid.empty() ? lambda_grid(h) : config.lambda_grid;
  g.times = config.t_grid;
  g.s_values = config.s_grid;
  return g;
}

namespace {

// Running minimum of margins with the point that produced it.
class MarginTracker {
 public:
  void offer(double margin, WorstProbe probe) {
    if (!seen_ || margin < best_ || (std::isnan(margin) && !std::isnan(best_))) {
      best_ = margin;
      worst_ = std::move(probe);
      seen_ = true;
    }
  }
  double best() const { return seen_ ? best_ : 0.0; }
  WorstProbe worst() const { return worst_; }

 private:
  bool seen_ = false;
  double best_ = std::numeric_limits<double>::infinity();
  WorstProbe worst_;
};

void offer_cone(MarginTracker& tracker, const ConeVerdict& cv, double grid_value, std::optional<double> s_value) {
  WorstProbe wp{"rank_one_sample", grid_value, s_value, CMatrix()};
  if (cv.witness) {
    wp.label = "witness";
    wp.matrix = (*cv.witness) * cv.witness->adjoint();
  }
  tracker.offer(cv.margin, std::move(wp));
}

void offer_probes(MarginTracker& tracker, const Superoperator& map, const std::vector<Probe>& probes,
                  bool unitary, double grid_value) {
  for (const auto& p : probes) {
    const CMatrix d = unitary ? map_dissipation_unitary(map, p.matrix) : map_dissipation(map, p.matrix);
    tracker.offer(psd_margin(d), {p.label, grid_value, std::nullopt, p.matrix});
  }
}

}  // namespace

ConditionResult check_condition(const SemigroupHandle& h, ConditionId id, const ProbeSet& probes, const Grids& grids,
                                double tol, const SearchBudget& budget) {
  if (!(tol > 0.0)) throw std::invalid_argument("check_condition: tol must be positive");
  ConditionResult r;
  r.id = id;
  MarginTracker tracker;
  switch (id) {
    case ConditionId::c1:
      r.grid = grids.times;
      for (double t : grids.times) offer_cone(tracker, positivity_check(evolve(h, t), budget, tol), t, std::nullopt);
      break;
    case ConditionId::c2:
      r.grid = grids.lambdas;
      for (double lambda : grids.lambdas)
        offer_cone(tracker, positivity_check(resolvent(h, lambda), budget, tol), lambda, std::nullopt);
      break;
    case ConditionId::c3:
    case ConditionId::c4:
      r.grid = grids.lambdas;
      for (double lambda : grids.lambdas) {
        const Superoperator res = resolvent(h, lambda);
        if (id == ConditionId::c3)
          offer_probes(tracker, res, probes.selfadjoint, false, lambda);
        else
          offer_probes(tracker, res, probes.unitaries, true, lambda);
      }
      break;
    case ConditionId::c5:
    case ConditionId::c6:
      r.grid = grids.times;
      for (double t : grids.times) {
        const Superoperator tt = evolve(h, t);
        if (id == ConditionId::c5)
          offer_probes(tracker, tt, probes.selfadjoint, false, t);
        else
          offer_probes(tracker, tt, probes.unitaries, true, t);
      }
      break;
    case ConditionId::c7:
      r.grid = grids.lambdas;
      for (double lambda : grids.lambdas)
        for (double s : grids.s_values)
          offer_cone(tracker, positivity_check(resolvent_semigroup(h, lambda, s), budget, tol), lambda, s);
      break;
    case ConditionId::eho1:
      offer_probes(tracker, h.generator(), probes.selfadjoint, false, 0.0);
      break;
    case ConditionId::eho2:
      offer_probes(tracker, h.generator(), probes.unitaries, true, 0.0);
      break;
  }
  r.min_margin = tracker.best();
  r.worst_probe = tracker.worst();
  if (!std::isfinite(r.min_margin))
    r.verdict = Verdict::inconclusive;
  else
    r.verdict = r.min_margin < -tol ? Verdict::violated : Verdict::satisfied;
  return r;
}

Theorem1Report theorem1_report(const SemigroupHandle& h, const CriteriaConfig& config) {
  Theorem1Report report;
  report.tol = config.tol;
  report.grids = resolve_grids(h, config);
  for (double t : report.grids.times) {
    const Superoperator tt = evolve(h, t);
    const double margin = is_symmetric_map(tt).margin / std::max(1.0, max_abs(tt.rep()));
    report.symmetry_margin = std::max(report.symmetry_margin, margin);
    if (!(margin <= config.symmetry_tol))
      throw HypothesisViolation("theorem 1 hypothesis: T_t is not symmetric at t = " + fmt(t) +
                                " (relative margin " + fmt(margin) + ")");
  }
  const ProbeSet probes = make_probe_set(h.dim(), config.n_selfadjoint, config.n_unitary, config.seed);
  bool any_satisfied = false;
  bool any_violated = false;
  for (ConditionId id : all_conditions()) {
    report.conditions.push_back(check_condition(h, id, probes, report.grids, config.tol, config.budget));
    any_satisfied |= report.conditions.back().verdict == Verdict::satisfied;
    any_violated |= report.conditions.back().verdict == Verdict::violated;
  }
  report.consistency_flag = !(any_satisfied && any_violated);
  return report;
}

ConeVerdict worst_of(const std::vector<ConeVerdict>& verdicts) {
  if (verdicts.empty()) return {};
  auto rank = [](ConeStatus s) {
    switch (s) {
      case ConeStatus::violated: return 2;
      case ConeStatus::no_violation_found: return 1;
      case ConeStatus::certified_positive: return 0;
    }
    return 1;
  };
  ConeVerdict out = verdicts.front();
  int samples = 0;
  for (const auto& v : verdicts) {
    samples += v.samples_used;
    if (rank(v.status) > rank(out.status)) out.status = v.status;
    if (v.margin < out.margin) {
      out.margin = v.margin;
      out.witness = v.witness;
    }
  }
  out.samples_used = samples;
  return out;
}

namespace {

void require_contraction(const SemigroupHandle& h, const CriteriaConfig& config, const char* which,
                         ContractionVerdict* worst) {
  for (double t : config.t_grid) {
    const ContractionVerdict cv = contraction_check(evolve(h, t), config.budget, config.tol);
    if (worst && cv.norm_lower_bound >= worst->norm_lower_bound) *worst = cv;
    if (cv.status == ContractionStatus::violated)
      throw HypothesisViolation(std::string(which) + " hypothesis: T_t is not a contraction at t = " + fmt(t) +
                                " (norm >= " + fmt(cv.norm_lower_bound) + ")");
  }
}

}  // namespace

Theorem2Report theorem2_check(const SemigroupHandle& h, const CriteriaConfig& config) {
  Theorem2Report r;
  r.contraction.status = ContractionStatus::certified_contraction;
  require_contraction(h, config, "theorem 2", &r.contraction);

  const Eigen::Index n = h.dim();
  r.l1_zero_margin = max_abs(h.generator().apply(identity(n)));
  r.symmetric_margin = is_symmetric_map(h.generator(), config.tol).margin;

  std::vector<ConeVerdict> cones;
  for (double t : config.t_grid) {
    const Superoperator tt = evolve(h, t);
    cones.push_back(positivity_check(tt, config.budget, config.tol));
    r.unital_margin = std::max(r.unital_margin, is_unital(tt, config.tol).margin);
  }
  r.positive = worst_of(cones);
  r.generator_side = r.l1_zero_margin <= config.tol && r.symmetric_margin <= config.tol;
  r.semigroup_side = r.positive.status != ConeStatus::violated && r.unital_margin <= config.tol;
  r.direction_consistency = r.generator_side == r.semigroup_side;
  return r;
}

Corollary1Report corollary1_check(const SemigroupHandle& h, const CriteriaConfig& config) {
  const Eigen::Index n = h.dim();
  for (double t : config.t_grid) {
    const Superoperator tt = evolve(h, t);
    const MapVerdict unital = is_unital(tt, config.tol);
    if (!unital.verdict)
      throw HypothesisViolation("corollary 1 hypothesis: T_t is not unital at t = " + fmt(t) + " (margin " +
                                fmt(unital.margin) + ")");
  }
  require_contraction(h, config, "corollary 1", nullptr);

  Corollary1Report r;
  r.spectrum_min = std::numeric_limits<double>::infinity();
  r.spectrum_max = -std::numeric_limits<double>::infinity();
  std::vector<CMatrix> unit_psd;
  for (Eigen::Index i = 0; i < n; ++i) unit_psd.push_back(matrix_unit(n, i, i));
  for (int k = 0; k < config.n_selfadjoint; ++k) {
    auto rng = substream(config.seed, stream_tag::kProbe, 1000000ULL + k);
    const CMatrix g = complex_gaussian(n, n, rng);
    const CMatrix a = g * g.adjoint();
    unit_psd.push_back(hermitian_part(a / spectral_norm(a)));
  }

  std::vector<ConeVerdict> cones;
  for (double t : config.t_grid) {
    const Superoperator tt = evolve(h, t);
    cones.push_back(positivity_check(tt, config.budget, config.tol));
    for (const auto& a : unit_psd) {
      const SpectralData sd = spectrum(hermitian_part(tt.apply(a)));
      r.spectrum_min = std::min(r.spectrum_min, sd.eigenvalues.front().real());
      r.spectrum_max = std::max(r.spectrum_max, sd.eigenvalues.back().real());
    }
  }
  r.positivity = worst_of(cones);
  r.spectrum_in_range = r.spectrum_min >= -config.tol && r.spectrum_max <= 2.0 + config.tol;
  return r;
}

}  // namespace posgen
