#include "posgen/superop.hpp"

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "posgen/random.hpp"

namespace posgen {

CVector vec(const CMatrix& x) {
  require_square(x, "vec input");
  const Eigen::Index n = x.rows();
  CVector v(n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) v(i + n * j) = x(i, j);
  return v;
}

CMatrix devec(const CVector& v, Eigen::Index n) {
  if (v.size() != n * n) throw DimensionError("devec: length is not n^2");
  CMatrix x(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = v(i + n * j);
  return x;
}

Superoperator::Superoperator(Eigen::Index n, CMatrix rep) : n_(n), rep_(std::move(rep)) {
  if (n < 1) throw DimensionError("superoperator: algebra dimension must be >= 1");
  if (rep_.rows() != n * n || rep_.cols() != n * n)
    throw DimensionError("superoperator: rep must be n^2 x n^2 for n = " + std::to_string(n));
  if (!all_finite(rep_)) throw std::invalid_argument("superoperator: non-finite entries");
}

Superoperator Superoperator::identity(Eigen::Index n) {
  return Superoperator(n, CMatrix::Identity(n * n, n * n));
}

Superoperator Superoperator::zero(Eigen::Index n) { return Superoperator(n, CMatrix::Zero(n * n, n * n)); }

Superoperator Superoperator::sandwich(const CMatrix& a, const CMatrix& b) {
  require_square(a, "left factor");
  require_square(b, "right factor");
  if (a.rows() != b.rows()) throw DimensionError("sandwich: factor dimensions differ");
  return Superoperator(a.rows(), kron(b.transpose(), a));
}

Superoperator Superoperator::conjugation(const CMatrix& u) { return sandwich(u.adjoint(), u); }

Superoperator Superoperator::transpose_map(Eigen::Index n) {
  CMatrix rep = CMatrix::Zero(n * n, n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) rep(j + n * i, i + n * j) = 1.0;
  return Superoperator(n, std::move(rep));
}

Superoperator Superoperator::from_function(Eigen::Index n,
                                           const std::function<CMatrix(const CMatrix&)>& f) {
  CMatrix rep(n * n, n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const CMatrix image = f(matrix_unit(n, i, j));
      if (image.rows() != n || image.cols() != n) throw DimensionError("from_function: image has wrong shape");
      rep.col(i + n * j) = vec(image);
    }
  return Superoperator(n, std::move(rep));
}

CMatrix Superoperator::apply(const CMatrix& x) const {
  if (x.rows() != n_ || x.cols() != n_)
    throw DimensionError("apply: element is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                         ", map acts on dim " + std::to_string(n_));
  return devec(rep_ * vec(x), n_);
}

Superoperator& Superoperator::operator+=(const Superoperator& other) {
  if (other.n_ != n_) throw DimensionError("superoperator sum: dimension mismatch");
  rep_ += other.rep_;
  return *this;
}

Superoperator& Superoperator::operator-=(const Superoperator& other) {
  if (other.n_ != n_) throw DimensionError("superoperator difference: dimension mismatch");
  rep_ -= other.rep_;
  return *this;
}

Superoperator& Superoperator::operator*=(Complex c) {
  rep_ *= c;
  return *this;
}

Superoperator operator+(Superoperator a, const Superoperator& b) { return a += b; }
Superoperator operator-(Superoperator a, const Superoperator& b) { return a -= b; }
Superoperator operator*(Complex c, Superoperator s) { return s *= c; }
Superoperator operator*(double c, Superoperator s) { return s *= Complex(c, 0.0); }

CMatrix apply(const Superoperator& s, const CMatrix& x) { return s.apply(x); }

Superoperator compose(const Superoperator& outer, const Superoperator& inner) {
  if (outer.dim() != inner.dim()) throw DimensionError("compose: dimension mismatch");
  return Superoperator(outer.dim(), outer.rep() * inner.rep());
}

Superoperator identity_superop(Eigen::Index n) { return Superoperator::identity(n); }

Superoperator superop_exp(const Superoperator& s) { return Superoperator(s.dim(), mat_exp(s.rep())); }

Superoperator hs_adjoint(const Superoperator& s) { return Superoperator(s.dim(), s.rep().adjoint()); }

MapVerdict is_symmetric_map(const Superoperator& s, double tol) {
  const Eigen::Index n = s.dim();
  double worst = 0.0;
  // Both sides are antilinear in x, so the matrix units decide it.
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const CMatrix lhs = s.apply(matrix_unit(n, j, i));
      const CMatrix rhs = s.apply(matrix_unit(n, i, j)).adjoint();
      worst = std::max(worst, max_abs(lhs - rhs));
    }
  return {worst <= tol, worst};
}

MapVerdict is_unital(const Superoperator& s, double tol) {
  const double margin = max_abs(s.apply(posgen::identity(s.dim())) - posgen::identity(s.dim()));
  return {margin <= tol, margin};
}

CMatrix choi_matrix(const Superoperator& s) {
  const Eigen::Index n = s.dim();
  CMatrix c(n * n, n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) c.block(i * n, j * n, n, n) = s.apply(matrix_unit(n, i, j));
  return c;
}

CpVerdict cp_check(const Superoperator& s, double tol) {
  const CMatrix c = choi_matrix(s);
  CpVerdict out;
  out.hermitian_margin = max_abs(c - c.adjoint());
  out.min_choi_eig = min_hermitian_eig(c);
  out.verdict = out.hermitian_margin <= tol && out.min_choi_eig >= -tol;
  return out;
}

std::string to_string(ConeStatus s) {
  switch (s) {
    case ConeStatus::certified_positive: return "certified_positive";
    case ConeStatus::no_violation_found: return "no_violation_found";
    case ConeStatus::violated: return "violated";
  }
  return "unknown";
}

std::string to_string(ContractionStatus s) {
  switch (s) {
    case ContractionStatus::certified_contraction: return "certified_contraction";
    case ContractionStatus::no_violation_found: return "no_violation_found";
    case ContractionStatus::violated: return "violated";
  }
  return "unknown";
}

double rank_one_margin(const Superoperator& s, const CVector& v) {
  return psd_margin(s.apply(v * v.adjoint()));
}

namespace {

CVector min_eigvec(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
  return es.eigenvectors().col(0);
}

// Indices of the k smallest (or largest) values, ties broken by index.
std::vector<std::size_t> extreme_indices(const std::vector<double>& values, int k, bool smallest) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return smallest ? values[a] < values[b] : values[a] > values[b];
  });
  idx.resize(std::min<std::size_t>(idx.size(), static_cast<std::size_t>(std::max(k, 0))));
  return idx;
}

}  // namespace

ConeVerdict positivity_check(const Superoperator& s, const SearchBudget& budget, double tol) {
  if (budget.n_random < 1 || budget.n_descent < 0 || budget.descent_steps < 0)
    throw std::invalid_argument("positivity_check: budget must be positive");
  const Eigen::Index n = s.dim();

  std::vector<CVector> samples;
  std::vector<double> values;
  samples.reserve(budget.n_random);
  values.reserve(budget.n_random);
  for (int i = 0; i < budget.n_random; ++i) {
    auto rng = substream(budget.seed, stream_tag::kPositivity, static_cast<std::uint64_t>(i));
    samples.push_back(random_unit_vector(n, rng));
    values.push_back(rank_one_margin(s, samples.back()));
  }

  ConeVerdict out;
  out.samples_used = budget.n_random;
  std::size_t best = extreme_indices(values, 1, true).front();
  out.margin = values[best];
  CVector best_v = samples[best];

  const CpVerdict cp = cp_check(s, tol);
  if (cp.verdict && out.margin >= -tol) {
    out.status = ConeStatus::certified_positive;
    return out;
  }

  // Alternating minimization of w^dagger S(v v^dagger) w over unit v, w;
  // each half-step is an exact eigenproblem, so the objective never rises.
  const Superoperator adjoint = hs_adjoint(s);
  for (std::size_t start : extreme_indices(values, budget.n_descent, true)) {
    CVector v = samples[start];
    double fv = values[start];
    for (int step = 0; step < budget.descent_steps; ++step) {
      const CVector w = min_eigvec(s.apply(v * v.adjoint()));
      const CVector candidate = min_eigvec(adjoint.apply(w * w.adjoint()));
      const double fc = rank_one_margin(s, candidate);
      ++out.samples_used;
      if (!(fc < fv - 1e-15 * std::max(1.0, std::abs(fv)))) break;
      v = candidate;
      fv = fc;
    }
    if (fv < out.margin) {
      out.margin = fv;
      best_v = v;
    }
  }

  if (out.margin < -tol) {
    out.status = ConeStatus::violated;
    out.witness = best_v;
    out.margin = rank_one_margin(s, best_v);
  } else {
    out.status = cp.verdict ? ConeStatus::certified_positive : ConeStatus::no_violation_found;
  }
  return out;
}

ContractionVerdict contraction_check(const Superoperator& s, const SearchBudget& budget, double tol) {
  if (budget.n_random < 1 || budget.n_descent < 0 || budget.descent_steps < 0)
    throw std::invalid_argument("contraction_check: budget must be positive");
  const Eigen::Index n = s.dim();
  auto ratio = [&](const CMatrix& x) { return spectral_norm(s.apply(x)) / spectral_norm(x); };

  std::vector<CMatrix> samples;
  std::vector<double> values;
  samples.reserve(budget.n_random + 1);
  samples.push_back(posgen::identity(n));
  for (int i = 0; i < budget.n_random; ++i) {
    auto rng = substream(budget.seed, stream_tag::kContraction, static_cast<std::uint64_t>(i));
    CMatrix g = complex_gaussian(n, n, rng);
    // Alternate general matrices with unitaries, the extreme points of the unit ball.
    samples.push_back(i % 2 == 0 ? g : unitary_polar_factor(g));
  }
  for (const auto& x : samples) values.push_back(ratio(x));

  ContractionVerdict out;
  out.norm_lower_bound = *std::max_element(values.begin(), values.end());

  // Ascent: x <- polar(S*(u v^dagger)) with (u, v) the top singular pair of
  // S(x). Each step maximizes a linear minorant of ||S(.)||, so it is monotone.
  const Superoperator adjoint = hs_adjoint(s);
  for (std::size_t start : extreme_indices(values, budget.n_descent, false)) {
    CMatrix x = samples[start];
    double fx = values[start];
    for (int step = 0; step < budget.descent_steps; ++step) {
      Eigen::JacobiSVD<CMatrix> svd(s.apply(x), Eigen::ComputeFullU | Eigen::ComputeFullV);
      const CMatrix z = svd.matrixU().col(0) * svd.matrixV().col(0).adjoint();
      const CMatrix candidate = unitary_polar_factor(adjoint.apply(z));
      const double fc = ratio(candidate);
      if (!(fc > fx + 1e-15 * std::max(1.0, fx))) break;
      x = candidate;
      fx = fc;
    }
    out.norm_lower_bound = std::max(out.norm_lower_bound, fx);
  }

  if (out.norm_lower_bound > 1.0 + tol) {
    out.status = ContractionStatus::violated;
  } else if (is_symmetric_map(s, tol).verdict && is_unital(s, tol).verdict && cp_check(s, tol).verdict) {
    out.status = ContractionStatus::certified_contraction;
  } else {
    out.status = ContractionStatus::no_violation_found;
  }
  return out;
}

}  // namespace posgen
