#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "posgen/semigroup.hpp"

namespace posgen {

/// The semigroup does not meet a theorem's hypothesis; never a counterexample.
class HypothesisViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Probe {
  std::string label;
  CMatrix matrix;
};

/// Self-adjoint probes a and unitary probes u. Always contains the unit,
/// the rank-one projectors onto basis vectors and onto (e_0 + e_1)/sqrt 2,
/// and the reflections 1 - 2p through those projectors.
struct ProbeSet {
  std::vector<Probe> selfadjoint;
  std::vector<Probe> unitaries;
  std::uint64_t seed = 0;
};

ProbeSet make_probe_set(Eigen::Index n, int n_selfadjoint, int n_unitary, std::uint64_t seed);

// Dissipation operators. Each condition holds at a point iff the returned
// operator is PSD.

/// R(a^2) + a R(1) a - R(a) a - a R(a), R = (lambda - L)^{-1}.
CMatrix dissipation_resolvent(const SemigroupHandle& h, double lambda, const CMatrix& a);
/// R(1) + u^dagger R(1) u - R(u^dagger) u - u^dagger R(u).
CMatrix dissipation_resolvent_unitary(const SemigroupHandle& h, double lambda, const CMatrix& u);
CMatrix dissipation_semigroup(const SemigroupHandle& h, double t, const CMatrix& a);
CMatrix dissipation_semigroup_unitary(const SemigroupHandle& h, double t, const CMatrix& u);
/// Generator-level forms L(a^2) + a L(1) a - L(a) a - a L(a) and the unitary analogue.
CMatrix eho_dissipation(const Superoperator& l, const CMatrix& a);
CMatrix eho_dissipation_unitary(const Superoperator& l, const CMatrix& u);

/// Dissipation of an arbitrary map S (all of the above specialize this).
CMatrix map_dissipation(const Superoperator& s, const CMatrix& a);
CMatrix map_dissipation_unitary(const Superoperator& s, const CMatrix& u);

/// int_0^T* e^{-lambda t} D_t(a) dt by the same composite rule as laplace_resolvent.
CMatrix laplace_dissipation(const SemigroupHandle& h, double lambda, const CMatrix& a,
                            const QuadratureConfig& quad = {});

enum class ConditionId { c1, c2, c3, c4, c5, c6, c7, eho1, eho2 };
std::string to_string(ConditionId id);
ConditionId condition_from_string(const std::string& s);
const std::vector<ConditionId>& all_conditions();

enum class Verdict { satisfied, violated, inconclusive };
std::string to_string(Verdict v);

struct WorstProbe {
  std::string label;
  /// lambda or t of the worst point; s is reported separately for condition 7.
  double grid_value = 0.0;
  std::optional<double> s_value;
  /// Probe element, or v v^dagger for the positivity-based conditions.
  CMatrix matrix;
};

struct ConditionResult {
  ConditionId id = ConditionId::c1;
  std::vector<double> grid;
  double min_margin = 0.0;
  WorstProbe worst_probe;
  Verdict verdict = Verdict::inconclusive;
};

struct CriteriaConfig {
  std::vector<double> t_grid = {0.1, 1.0, 10.0};
  std::vector<double> s_grid = {0.5, 1.0, 2.0};
  /// Empty means lambda_grid(h).
  std::vector<double> lambda_grid;
  int n_selfadjoint = 50;
  int n_unitary = 50;
  std::uint64_t seed = 0;
  SearchBudget budget;
  double tol = kDefaultTol;
  /// Relative tolerance for the symmetric-semigroup hypothesis.
  double symmetry_tol = kDefaultTol;
};

struct Grids {
  std::vector<double> lambdas;
  std::vector<double> times;
  std::vector<double> s_values;
};

Grids resolve_grids(const SemigroupHandle& h, const CriteriaConfig& config);

ConditionResult check_condition(const SemigroupHandle& h, ConditionId id, const ProbeSet& probes, const Grids& grids,
                                double tol, const SearchBudget& budget);

struct Theorem1Report {
  std::vector<ConditionResult> conditions;
  /// False iff some condition is satisfied while another is violated.
  bool consistency_flag = true;
  double tol = kDefaultTol;
  double symmetry_margin = 0.0;
  Grids grids;
};

/// Throws HypothesisViolation if T_t is not symmetric on the t-grid.
Theorem1Report theorem1_report(const SemigroupHandle& h, const CriteriaConfig& config = {});

struct Theorem2Report {
  double l1_zero_margin = 0.0;
  double symmetric_margin = 0.0;
  ContractionVerdict contraction;
  ConeVerdict positive;
  double unital_margin = 0.0;
  bool generator_side = false;
  bool semigroup_side = false;
  bool direction_consistency = false;
};

/// Both sides of: T_t positive and unital <=> L(1) = 0 and L symmetric.
/// Throws HypothesisViolation when T_t is not a contraction on the t-grid.
Theorem2Report theorem2_check(const SemigroupHandle& h, const CriteriaConfig& config = {});

struct Corollary1Report {
  ConeVerdict positivity;
  /// Extreme eigenvalues of T_t(a) over random PSD a with ||a|| = 1.
  double spectrum_min = 0.0;
  double spectrum_max = 0.0;
  bool spectrum_in_range = false;
};

/// Unital contraction semigroups are positive. Throws HypothesisViolation
/// naming the failed precondition (unitality or contractivity).
Corollary1Report corollary1_check(const SemigroupHandle& h, const CriteriaConfig& config = {});

/// Worst verdict over a list (violated > no violation > certified).
ConeVerdict worst_of(const std::vector<ConeVerdict>& verdicts);

}  // namespace posgen
