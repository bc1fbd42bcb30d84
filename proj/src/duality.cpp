#include "posgen/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "posgen/instances.hpp"
#include "posgen/random.hpp"

namespace posgen {

DensityMatrix::DensityMatrix(CMatrix rho) : rho_(std::move(rho)) {
  require_square(rho_, "density matrix");
  if (!all_finite(rho_)) throw std::invalid_argument("density matrix: non-finite entries");
  const ElementFlags f = classify_element(rho_, kPsdTol);
  if (!f.hermitian)
    throw std::invalid_argument("density matrix: not Hermitian (margin " + std::to_string(f.hermitian_margin) + ")");
  if (!f.psd) throw std::invalid_argument("density matrix: not PSD (min eigenvalue " + std::to_string(f.min_eig) + ")");
  const double trace_err = std::abs(rho_.trace() - Complex(1.0, 0.0));
  if (trace_err > kTraceTol)
    throw std::invalid_argument("density matrix: trace differs from 1 by " + std::to_string(trace_err));
}

Superoperator predual_generator(const Superoperator& l) { return hs_adjoint(l); }

CMatrix predual_evolve(const Superoperator& l, double t, const CMatrix& rho) {
  if (!(t >= 0.0)) throw std::invalid_argument("predual_evolve: t must be >= 0");
  return superop_exp(t * predual_generator(l)).apply(rho);
}

CMatrix predual_evolve(const SemigroupHandle& predual, double t, const CMatrix& rho) {
  return evolve(predual, t).apply(rho);
}

Complex hs_inner(const CMatrix& x, const CMatrix& y) { return (x.adjoint() * y).trace(); }

KossakowskiProbes make_kossakowski_probes(Eigen::Index n, int n_states, int n_pairs, std::uint64_t seed) {
  KossakowskiProbes p;
  for (int i = 0; i < n_states; ++i) p.states.push_back(random_density(n, seed * 1000003ULL + i));
  for (int i = 0; i < n_pairs; ++i) {
    auto rng = substream(seed, stream_tag::kDensity, 1000000ULL + i);
    CMatrix rho = complex_gaussian(n, n, rng);
    CMatrix a = complex_gaussian(n, n, rng);
    p.pairs.emplace_back(std::move(rho), std::move(a));
  }
  return p;
}

KossakowskiReport kossakowski_check(const Superoperator& l, const KossakowskiProbes& probes,
                                    const std::vector<double>& t_grid, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("kossakowski_check: tol must be positive");
  const Eigen::Index n = l.dim();
  KossakowskiReport out;
  out.l1_zero_margin = max_abs(l.apply(identity(n)));
  out.state_positivity.min_eig = std::numeric_limits<double>::infinity();

  const SemigroupHandle heisenberg(l);
  const SemigroupHandle predual(predual_generator(l));
  for (double t : t_grid) {
    const Superoperator forward = evolve(heisenberg, t);
    const Superoperator backward = evolve(predual, t);
    out.evolution_scale = std::max(out.evolution_scale, max_abs(backward.rep()));
    for (const auto& state : probes.states) {
      const CMatrix rho_t = backward.apply(state.matrix());
      out.trace_preserving_margin =
          std::max(out.trace_preserving_margin, std::abs(rho_t.trace() - state.matrix().trace()));
      // Only the self-adjoint part of the predual is probed for positivity.
      out.state_positivity.min_eig = std::min(out.state_positivity.min_eig, psd_margin(rho_t));
    }
    for (const auto& [rho, a] : probes.pairs) {
      const Complex lhs = hs_inner(backward.apply(rho), a);
      const Complex rhs = hs_inner(rho, forward.apply(a));
      out.pairing_margin = std::max(out.pairing_margin, std::abs(lhs - rhs));
    }
  }
  if (probes.states.empty()) out.state_positivity.min_eig = 0.0;
  out.state_positivity.violated = out.state_positivity.min_eig < -tol;
  out.trace_preserving = out.trace_preserving_margin <= tol * out.evolution_scale;
  out.l1_zero = out.l1_zero_margin <= tol;
  out.equivalence_consistent = out.trace_preserving == out.l1_zero;
  return out;
}

}  // namespace posgen
