#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace posgen {

using Complex = std::complex<double>;
/// Element of the algebra M(n, C). Square, finite entries.
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Default tolerance shared by every predicate in the toolkit.
inline constexpr double kDefaultTol = 1e-9;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ElementFlags {
  bool hermitian = false;
  bool psd = false;
  bool unitary = false;
  /// Smallest eigenvalue of the Hermitian part; meaningful when hermitian.
  double min_eig = 0.0;
  double hermitian_margin = 0.0;  // ||x - x^dagger||_max
  double unitary_margin = 0.0;    // ||x^dagger x - 1||_max
};

struct SpectralData {
  std::vector<Complex> eigenvalues;
  /// Present only when the input was Hermitian within tolerance.
  std::optional<double> min_hermitian_eigenvalue;
};

void require_square(const CMatrix& m, const char* what = "matrix");
bool all_finite(const CMatrix& m);

/// Entrywise max modulus; the norm used for all equality checks.
double max_abs(const CMatrix& m);
double spectral_norm(const CMatrix& m);

CMatrix hermitian_part(const CMatrix& m);
CMatrix antihermitian_part(const CMatrix& m);

/// Smallest eigenvalue of the Hermitian part of m.
double min_hermitian_eig(const CMatrix& m);

/// Signed distance-to-cone proxy: min eigenvalue of the Hermitian part minus
/// the spectral norm of the anti-Hermitian part. Equals the min eigenvalue
/// for Hermitian input and is negative for anything outside the PSD cone
/// by more than its non-Hermiticity.
double psd_margin(const CMatrix& m);

ElementFlags classify_element(const CMatrix& x, double tol = kDefaultTol);

/// Eigenvalues; Hermitian inputs go through the symmetric solver and come
/// back real and ascending, general inputs are sorted by (real, imag).
SpectralData spectrum(const CMatrix& m, double hermitian_tol = 1e-12);

/// Scaling-and-squaring Pade exponential; normal inputs use their Schur form.
CMatrix mat_exp(const CMatrix& m);
/// Always the Pade path, for callers that want to bypass the normal shortcut.
CMatrix mat_exp_pade(const CMatrix& m);

/// Polar (closest unitary) factor W = U V^dagger of m = U S V^dagger.
CMatrix unitary_polar_factor(const CMatrix& m);

CMatrix kron(const CMatrix& a, const CMatrix& b);

CMatrix identity(Eigen::Index n);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
/// Matrix unit E_ij on M(n).
CMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j);

}  // namespace posgen
