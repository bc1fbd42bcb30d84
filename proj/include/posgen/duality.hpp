#pragma once

#include <vector>

#include "posgen/semigroup.hpp"

namespace posgen {

/// Hermitian, PSD (to 1e-9) and unit-trace (to 1e-10) element of M(n).
/// Functionals on M(n) are realized as eta(a) = Tr(rho a).
class DensityMatrix {
 public:
  static constexpr double kPsdTol = 1e-9;
  static constexpr double kTraceTol = 1e-10;

  /// Throws std::invalid_argument naming the failing margin.
  explicit DensityMatrix(CMatrix rho);

  const CMatrix& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }

 private:
  CMatrix rho_;
};

/// L*, the Hilbert-Schmidt adjoint of the Heisenberg generator.
Superoperator predual_generator(const Superoperator& l);

/// exp(t L*)(rho).
CMatrix predual_evolve(const Superoperator& l, double t, const CMatrix& rho);
/// Same, reusing a cached handle for L*.
CMatrix predual_evolve(const SemigroupHandle& predual, double t, const CMatrix& rho);

/// Tr(x^dagger y).
Complex hs_inner(const CMatrix& x, const CMatrix& y);

struct StatePositivity {
  /// Smallest eigenvalue over all evolved states and times.
  double min_eig = 0.0;
  bool violated = false;
};

struct KossakowskiReport {
  /// max |Tr T_t*(rho) - Tr rho| over probes and times.
  double trace_preserving_margin = 0.0;
  /// max(1, largest entry of T_t* over the grid); trace preservation is
  /// judged against tol * evolution_scale, the roundoff floor of T_t*.
  double evolution_scale = 1.0;
  /// ||L(1)||_max; eta(L(1)) = L*(eta)(1) vanishes for all eta iff L(1) = 0.
  double l1_zero_margin = 0.0;
  StatePositivity state_positivity;
  /// max |Tr(T_t*(rho)^dagger a) - Tr(rho^dagger T_t(a))| on general complex pairs.
  double pairing_margin = 0.0;
  bool trace_preserving = false;
  bool l1_zero = false;
  bool equivalence_consistent = false;
};

struct KossakowskiProbes {
  std::vector<DensityMatrix> states;
  /// General complex (rho, a) pairs for the pairing identity.
  std::vector<std::pair<CMatrix, CMatrix>> pairs;
};

KossakowskiProbes make_kossakowski_probes(Eigen::Index n, int n_states, int n_pairs, std::uint64_t seed);

KossakowskiReport kossakowski_check(const Superoperator& l, const KossakowskiProbes& probes,
                                    const std::vector<double>& t_grid, double tol = kDefaultTol);

}  // namespace posgen
