#include "posgen/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include <Eigen/Eigenvalues>

namespace posgen {

std::string to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::explicit_map: return "explicit";
    case GeneratorKind::hamiltonian: return "hamiltonian";
    case GeneratorKind::lindblad: return "lindblad";
  }
  return "unknown";
}

Superoperator lindblad_superop(const CMatrix& h, const std::vector<CMatrix>& jumps) {
  require_square(h, "Hamiltonian");
  const Eigen::Index n = h.rows();
  const CMatrix id = identity(n);
  const Complex i_unit(0.0, 1.0);
  // vec(A X B) = (B^T kron A) vec(X)
  CMatrix rep = i_unit * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& v : jumps) {
    require_square(v, "jump operator");
    if (v.rows() != n) throw DimensionError("jump operator dimension differs from Hamiltonian");
    const CMatrix k = v.adjoint() * v;
    rep += kron(v.transpose(), v.adjoint()) - 0.5 * (kron(id, k) + kron(k.transpose(), id));
  }
  return Superoperator(n, std::move(rep));
}

GeneratorSpec::GeneratorSpec(GeneratorKind kind, Superoperator generator, CMatrix h, std::vector<CMatrix> jumps)
    : kind_(kind), generator_(std::move(generator)), h_(std::move(h)), jumps_(std::move(jumps)) {}

GeneratorSpec GeneratorSpec::from_superop(Superoperator l) {
  return GeneratorSpec(GeneratorKind::explicit_map, std::move(l), CMatrix(), {});
}

namespace {

void assert_structured_generator(const Superoperator& l) {
  const double scale = std::max(1.0, max_abs(l.rep()));
  const double unit_margin = max_abs(l.apply(identity(l.dim())));
  if (unit_margin > 1e-12 * scale)
    throw std::logic_error("generator construction: L(1) != 0 (margin " + std::to_string(unit_margin) + ")");
  const MapVerdict sym = is_symmetric_map(l, 1e-12 * scale);
  if (!sym.verdict)
    throw std::logic_error("generator construction: not hermiticity preserving (margin " +
                           std::to_string(sym.margin) + ")");
}

void require_hermitian(const CMatrix& h) {
  require_square(h, "Hamiltonian");
  const double margin = max_abs(h - h.adjoint());
  if (margin > 1e-10) throw std::invalid_argument("Hamiltonian is not Hermitian (margin " + std::to_string(margin) + ")");
}

}  // namespace

GeneratorSpec GeneratorSpec::from_hamiltonian(const CMatrix& h) {
  require_hermitian(h);
  Superoperator l = lindblad_superop(h, {});
  assert_structured_generator(l);
  return GeneratorSpec(GeneratorKind::hamiltonian, std::move(l), h, {});
}

GeneratorSpec GeneratorSpec::from_lindblad(const CMatrix& h, std::vector<CMatrix> jumps) {
  require_hermitian(h);
  Superoperator l = lindblad_superop(h, jumps);
  assert_structured_generator(l);
  return GeneratorSpec(GeneratorKind::lindblad, std::move(l), h, std::move(jumps));
}

double spectral_abscissa(const Superoperator& l) {
  Eigen::ComplexEigenSolver<CMatrix> es(l.rep(), false);
  return es.eigenvalues().real().maxCoeff();
}

SemigroupHandle::SemigroupHandle(Superoperator generator) : generator_(std::move(generator)) {
  Eigen::ComplexSchur<CMatrix> schur(generator_.rep());
  schur_u_ = schur.matrixU();
  schur_t_ = schur.matrixT();
  const CVector d = schur_t_.diagonal();
  eigenvalues_.assign(d.data(), d.data() + d.size());
  abscissa_ = d.real().maxCoeff();
}

Superoperator evolve(const SemigroupHandle& h, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("evolve: t must be >= 0, got " + std::to_string(t));
  if (t == 0.0) return Superoperator::identity(h.dim());
  const CMatrix e = mat_exp(t * h.schur_t());
  return Superoperator(h.dim(), h.schur_u() * e * h.schur_u().adjoint());
}

Superoperator resolvent(const SemigroupHandle& h, double lambda) {
  if (!(lambda > h.spectral_abscissa() + kResolventGap))
    throw ResolventPoleError("resolvent: lambda = " + std::to_string(lambda) +
                             " is not beyond the spectral abscissa " + std::to_string(h.spectral_abscissa()));
  const Eigen::Index d = h.generator().rep().rows();
  const CMatrix shifted = lambda * CMatrix::Identity(d, d) - h.generator().rep();
  return Superoperator(h.dim(), shifted.partialPivLu().inverse());
}

GaussLegendreRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    // Newton on P_order from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

double laplace_cutoff(double abscissa, double lambda, double eps) {
  const double gap = lambda - abscissa;
  const double t_star = std::log(1.0 / (eps * gap)) / gap;
  return std::max(t_star, 1.0 / gap);
}

Superoperator laplace_resolvent(const SemigroupHandle& h, double lambda, const QuadratureConfig& quad) {
  if (quad.panels < 1 || quad.order < 1 || !(quad.truncation_eps > 0.0))
    throw std::invalid_argument("laplace_resolvent: invalid quadrature configuration");
  const double abscissa = h.spectral_abscissa();
  if (!(lambda > abscissa + 1e-6))
    throw DecayError("laplace_resolvent: integrand does not decay for lambda = " + std::to_string(lambda) +
                     " (spectral abscissa " + std::to_string(abscissa) + ")");
  const double t_star = laplace_cutoff(abscissa, lambda, quad.truncation_eps);
  const GaussLegendreRule rule = gauss_legendre(quad.order);
  const double width = t_star / quad.panels;
  const Eigen::Index d = h.generator().rep().rows();
  CMatrix acc = CMatrix::Zero(d, d);
  for (int p = 0; p < quad.panels; ++p) {
    const double left = p * width;
    for (int q = 0; q < quad.order; ++q) {
      const double t = left + 0.5 * width * (rule.nodes[q] + 1.0);
      const double w = 0.5 * width * rule.weights[q] * std::exp(-lambda * t);
      acc += w * evolve(h, t).rep();
    }
  }
  return Superoperator(h.dim(), std::move(acc));
}

namespace {

CMatrix matrix_power(CMatrix base, int m) {
  CMatrix result = CMatrix::Identity(base.rows(), base.cols());
  while (m > 0) {
    if (m & 1) result = result * base;
    m >>= 1;
    if (m > 0) base = base * base;
  }
  return result;
}

}  // namespace

Superoperator euler_product(const SemigroupHandle& h, double t, int m) {
  if (!(t > 0.0)) throw std::invalid_argument("euler_product: t must be > 0");
  if (m < 1) throw std::invalid_argument("euler_product: m must be >= 1");
  const double rate = m / t;
  const Superoperator r = resolvent(h, rate);
  return Superoperator(h.dim(), matrix_power(rate * r.rep(), m));
}

Superoperator yosida_generator(const SemigroupHandle& h, double lambda) {
  const Superoperator r = resolvent(h, lambda);
  return (lambda * lambda) * r - lambda * Superoperator::identity(h.dim());
}

Superoperator yosida_generator_product_form(const SemigroupHandle& h, double lambda) {
  return lambda * compose(h.generator(), resolvent(h, lambda));
}

Superoperator resolvent_semigroup(const SemigroupHandle& h, double lambda, double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("resolvent_semigroup: s must be >= 0");
  return superop_exp(s * resolvent(h, lambda));
}

Superoperator yosida_semigroup(const SemigroupHandle& h, double lambda, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("yosida_semigroup: t must be >= 0");
  const Superoperator r = resolvent(h, lambda);
  int halvings = 0;
  if (lambda * t > 1.0) halvings = static_cast<int>(std::ceil(std::log2(lambda * t)));
  const double tk = std::ldexp(t, -halvings);
  CMatrix u = std::exp(-tk * lambda) * mat_exp((lambda * lambda * tk) * r.rep());
  for (int i = 0; i < halvings; ++i) u = u * u;
  return Superoperator(h.dim(), std::move(u));
}

std::vector<double> lambda_grid(const SemigroupHandle& h) {
  const double base = std::max(1.0, h.spectral_abscissa() + 1.0);
  return {base, 10.0 * base, 100.0 * base};
}

}  // namespace posgen
