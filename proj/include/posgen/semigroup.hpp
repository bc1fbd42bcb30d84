#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "posgen/superop.hpp"

namespace posgen {

class ResolventPoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DecayError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class GeneratorKind { explicit_map, hamiltonian, lindblad };
std::string to_string(GeneratorKind k);

/// Declarative description of a generator L on M(n). In finite dimension
/// D(L) is the whole algebra, so no domain is tracked.
class GeneratorSpec {
 public:
  static GeneratorSpec from_superop(Superoperator l);
  /// L(x) = i[H, x].
  static GeneratorSpec from_hamiltonian(const CMatrix& h);
  /// Heisenberg-picture Lindblad form
  /// L(x) = i[H, x] + sum_k (V_k^dagger x V_k - 1/2 {V_k^dagger V_k, x}).
  static GeneratorSpec from_lindblad(const CMatrix& h, std::vector<CMatrix> jumps);

  GeneratorKind kind() const { return kind_; }
  Eigen::Index dim() const { return generator_.dim(); }
  const Superoperator& generator() const { return generator_; }
  /// Empty for explicit generators.
  const CMatrix& hamiltonian() const { return h_; }
  const std::vector<CMatrix>& jumps() const { return jumps_; }

 private:
  GeneratorSpec(GeneratorKind kind, Superoperator generator, CMatrix h, std::vector<CMatrix> jumps);

  GeneratorKind kind_;
  Superoperator generator_;
  CMatrix h_;
  std::vector<CMatrix> jumps_;
};

/// Generator superoperator of the Lindblad form above (no validation).
Superoperator lindblad_superop(const CMatrix& h, const std::vector<CMatrix>& jumps);

/// Max real part of the spectrum of the map.
double spectral_abscissa(const Superoperator& l);

/// The semigroup T_t = exp(t L) with the generator's Schur form cached.
/// Immutable after construction.
class SemigroupHandle {
 public:
  explicit SemigroupHandle(Superoperator generator);
  explicit SemigroupHandle(const GeneratorSpec& spec) : SemigroupHandle(spec.generator()) {}

  const Superoperator& generator() const { return generator_; }
  Eigen::Index dim() const { return generator_.dim(); }
  double spectral_abscissa() const { return abscissa_; }
  const std::vector<Complex>& eigenvalues() const { return eigenvalues_; }
  const CMatrix& schur_u() const { return schur_u_; }
  const CMatrix& schur_t() const { return schur_t_; }

 private:
  Superoperator generator_;
  CMatrix schur_u_;
  CMatrix schur_t_;
  std::vector<Complex> eigenvalues_;
  double abscissa_ = 0.0;
};

/// lambda must exceed the spectral abscissa by more than this gap.
inline constexpr double kResolventGap = 1e-9;

Superoperator evolve(const SemigroupHandle& h, double t);
/// (lambda - L)^{-1}.
Superoperator resolvent(const SemigroupHandle& h, double lambda);

struct QuadratureConfig {
  int panels = 64;
  int order = 8;
  double truncation_eps = 1e-10;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int order);

/// Upper limit T* with exp((abscissa - lambda) T*) / (lambda - abscissa) <= eps.
double laplace_cutoff(double abscissa, double lambda, double eps);

/// Composite Gauss-Legendre approximation of int_0^T* e^{-lambda t} T_t dt.
Superoperator laplace_resolvent(const SemigroupHandle& h, double lambda, const QuadratureConfig& quad = {});

/// ((m/t) (m/t - L)^{-1})^m.
Superoperator euler_product(const SemigroupHandle& h, double t, int m);

/// lambda^2 (lambda - L)^{-1} - lambda.
Superoperator yosida_generator(const SemigroupHandle& h, double lambda);
/// lambda L (lambda - L)^{-1}; the same map written as a product.
Superoperator yosida_generator_product_form(const SemigroupHandle& h, double lambda);

/// exp(s (lambda - L)^{-1}).
Superoperator resolvent_semigroup(const SemigroupHandle& h, double lambda, double s);

/// e^{-t lambda} S_{lambda^2 t}, with S_s = exp(s (lambda - L)^{-1}). The
/// product is split as (e^{-t lambda / 2^k} S_{lambda^2 t / 2^k})^{2^k} so
/// neither factor overflows at large lambda t.
Superoperator yosida_semigroup(const SemigroupHandle& h, double lambda, double t);

/// {1, 10, 100} * max(1, abscissa + 1).
std::vector<double> lambda_grid(const SemigroupHandle& h);

}  // namespace posgen
