#include "posgen/matrixcore.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace posgen {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionError(std::string(what) + " must be square with dim >= 1, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

bool all_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

CMatrix antihermitian_part(const CMatrix& m) { return 0.5 * (m - m.adjoint()); }

double min_hermitian_eig(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double psd_margin(const CMatrix& m) {
  const CMatrix k = antihermitian_part(m);
  const double skew = max_abs(k) == 0.0 ? 0.0 : spectral_norm(k);
  return min_hermitian_eig(m) - skew;
}

ElementFlags classify_element(const CMatrix& x, double tol) {
  require_square(x, "element");
  if (!(tol > 0.0)) throw std::invalid_argument("classify_element: tol must be positive");
  ElementFlags f;
  f.hermitian_margin = max_abs(x - x.adjoint());
  f.hermitian = f.hermitian_margin <= tol;
  f.min_eig = min_hermitian_eig(x);
  f.psd = f.hermitian && f.min_eig >= -tol;
  f.unitary_margin = max_abs(x.adjoint() * x - identity(x.rows()));
  f.unitary = f.unitary_margin <= tol;
  return f;
}

SpectralData spectrum(const CMatrix& m, double hermitian_tol) {
  require_square(m, "spectrum input");
  SpectralData out;
  const double scale = std::max(1.0, max_abs(m));
  if (max_abs(m - m.adjoint()) <= hermitian_tol * scale) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
    out.eigenvalues.reserve(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.eigenvalues.emplace_back(es.eigenvalues()(i), 0.0);
    out.min_hermitian_eigenvalue = es.eigenvalues()(0);
    return out;
  }
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  const auto& ev = es.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

namespace {

// Pade coefficients and backward-error thresholds from Higham (2005).
constexpr std::array<double, 4> kB3 = {120., 60., 12., 1.};
constexpr std::array<double, 6> kB5 = {30240., 15120., 3360., 420., 30., 1.};
constexpr std::array<double, 8> kB7 = {17297280., 8648640., 1995840., 277200.,
                                       25200.,    1512.,    56.,      1.};
constexpr std::array<double, 10> kB9 = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                                        2162160.,     110880.,     3960.,       90.,        1.};
constexpr std::array<double, 14> kB13 = {
    64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800., 129060195264000.,
    10559470521600.,    670442572800.,      33522128640.,      1323241920.,       40840800.,
    960960.,            16380.,             182.,              1.};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

double one_norm(const CMatrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

template <std::size_t N>
CMatrix pade_low(const CMatrix& a, const std::array<double, N>& b) {
  // Degree m = N - 1, odd; U collects odd powers, V even powers.
  const Eigen::Index n = a.rows();
  const CMatrix id = identity(n);
  const CMatrix a2 = a * a;
  CMatrix power = id;
  CMatrix u_even = b[1] * id;
  CMatrix v = b[0] * id;
  for (std::size_t k = 2; k < N; k += 2) {
    power = power * a2;
    v += b[k] * power;
    u_even += b[k + 1] * power;
  }
  const CMatrix u = a * u_even;
  return (v - u).partialPivLu().solve(v + u);
}

CMatrix pade13(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  const CMatrix id = identity(n);
  const CMatrix a2 = a * a;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a4 * a2;
  const CMatrix u_inner = kB13[13] * a6 + kB13[11] * a4 + kB13[9] * a2;
  const CMatrix u = a * (a6 * u_inner + kB13[7] * a6 + kB13[5] * a4 + kB13[3] * a2 + kB13[1] * id);
  const CMatrix v_inner = kB13[12] * a6 + kB13[10] * a4 + kB13[8] * a2;
  const CMatrix v = a6 * v_inner + kB13[6] * a6 + kB13[4] * a4 + kB13[2] * a2 + kB13[0] * id;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

CMatrix mat_exp_pade(const CMatrix& m) {
  require_square(m, "mat_exp input");
  if (!all_finite(m)) throw std::invalid_argument("mat_exp: non-finite entries");
  const double norm = one_norm(m);
  if (norm <= kTheta3) return pade_low(m, kB3);
  if (norm <= kTheta5) return pade_low(m, kB5);
  if (norm <= kTheta7) return pade_low(m, kB7);
  if (norm <= kTheta9) return pade_low(m, kB9);
  int squarings = 0;
  if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  CMatrix result = pade13(m / std::ldexp(1.0, squarings));
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

CMatrix mat_exp(const CMatrix& m) {
  require_square(m, "mat_exp input");
  if (!all_finite(m)) throw std::invalid_argument("mat_exp: non-finite entries");
  const double scale = max_abs(m);
  if (scale == 0.0) return identity(m.rows());
  const CMatrix commutator = m * m.adjoint() - m.adjoint() * m;
  if (max_abs(commutator) <= 1e-14 * scale * scale) {
    Eigen::ComplexSchur<CMatrix> schur(m);
    const CMatrix& t = schur.matrixT();
    const CMatrix strict_upper = t.triangularView<Eigen::StrictlyUpper>();
    if (max_abs(strict_upper) <= 1e-13 * scale) {
      const CMatrix& u = schur.matrixU();
      CVector d = t.diagonal().array().exp();
      return u * d.asDiagonal() * u.adjoint();
    }
  }
  return mat_exp_pade(m);
}

CMatrix unitary_polar_factor(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

CMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

}  // namespace posgen
