#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "posgen/matrixcore.hpp"

namespace posgen {

/// Column-stacking vectorization: entry (i, j) of an n x n matrix lands at
/// index i + n * j. Under this convention vec(A X B) = (B^T kron A) vec(X).
CVector vec(const CMatrix& x);
CMatrix devec(const CVector& v, Eigen::Index n);

/// A linear map on M(n, C), stored as its n^2 x n^2 matrix on vec(x).
class Superoperator {
 public:
  Superoperator(Eigen::Index n, CMatrix rep);

  static Superoperator identity(Eigen::Index n);
  static Superoperator zero(Eigen::Index n);
  /// x -> a x b.
  static Superoperator sandwich(const CMatrix& a, const CMatrix& b);
  /// x -> u^dagger x u.
  static Superoperator conjugation(const CMatrix& u);
  static Superoperator transpose_map(Eigen::Index n);
  /// Tabulates an arbitrary linear map on the matrix-unit basis.
  static Superoperator from_function(Eigen::Index n, const std::function<CMatrix(const CMatrix&)>& f);

  Eigen::Index dim() const { return n_; }
  const CMatrix& rep() const { return rep_; }

  CMatrix apply(const CMatrix& x) const;
  CMatrix operator()(const CMatrix& x) const { return apply(x); }

  Superoperator& operator+=(const Superoperator& other);
  Superoperator& operator-=(const Superoperator& other);
  Superoperator& operator*=(Complex c);

 private:
  Eigen::Index n_;
  CMatrix rep_;
};

Superoperator operator+(Superoperator a, const Superoperator& b);
Superoperator operator-(Superoperator a, const Superoperator& b);
Superoperator operator*(Complex c, Superoperator s);
Superoperator operator*(double c, Superoperator s);

CMatrix apply(const Superoperator& s, const CMatrix& x);
/// (outer o inner)(x) = outer(inner(x)).
Superoperator compose(const Superoperator& outer, const Superoperator& inner);
Superoperator identity_superop(Eigen::Index n);
Superoperator superop_exp(const Superoperator& s);

/// Adjoint for the Hilbert-Schmidt inner product <A, B> = Tr(A^dagger B).
Superoperator hs_adjoint(const Superoperator& s);

struct MapVerdict {
  bool verdict = false;
  double margin = 0.0;
};

MapVerdict is_symmetric_map(const Superoperator& s, double tol = kDefaultTol);
MapVerdict is_unital(const Superoperator& s, double tol = kDefaultTol);

/// Choi matrix sum_ij E_ij kron S(E_ij), unnormalized.
CMatrix choi_matrix(const Superoperator& s);

struct CpVerdict {
  bool verdict = false;
  double min_choi_eig = 0.0;
  double hermitian_margin = 0.0;
};

CpVerdict cp_check(const Superoperator& s, double tol = kDefaultTol);

struct SearchBudget {
  int n_random = 200;
  int n_descent = 4;
  int descent_steps = 60;
  std::uint64_t seed = 0;
};

enum class ConeStatus { certified_positive, no_violation_found, violated };
std::string to_string(ConeStatus s);

struct ConeVerdict {
  ConeStatus status = ConeStatus::no_violation_found;
  /// Unit vector v with S(v v^dagger) outside the cone; set iff violated.
  std::optional<CVector> witness;
  /// Most negative psd_margin(S(v v^dagger)) observed.
  double margin = 0.0;
  int samples_used = 0;
};

/// psd_margin of S(v v^dagger); the objective minimized by positivity_check.
double rank_one_margin(const Superoperator& s, const CVector& v);

/// Sampled search for a rank-one input whose image leaves the PSD cone, with
/// local descent from the worst samples and the Choi certificate as a
/// sufficient condition for positivity.
ConeVerdict positivity_check(const Superoperator& s, const SearchBudget& budget = {},
                             double tol = kDefaultTol);

enum class ContractionStatus { certified_contraction, no_violation_found, violated };
std::string to_string(ContractionStatus s);

struct ContractionVerdict {
  ContractionStatus status = ContractionStatus::no_violation_found;
  /// Largest ||S(x)|| / ||x|| (spectral norms) found.
  double norm_lower_bound = 0.0;
};

ContractionVerdict contraction_check(const Superoperator& s, const SearchBudget& budget = {},
                                     double tol = kDefaultTol);

}  // namespace posgen
