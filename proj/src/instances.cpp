#include "posgen/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/QR>

#include "posgen/duality.hpp"
#include "posgen/random.hpp"

namespace posgen {

CMatrix random_hermitian(Eigen::Index n, std::uint64_t seed, double scale) {
  auto rng = substream(seed, stream_tag::kHermitian, static_cast<std::uint64_t>(n));
  const CMatrix g = complex_gaussian(n, n, rng);
  return scale * hermitian_part(g);
}

CMatrix random_unitary(Eigen::Index n, std::uint64_t seed) {
  auto rng = substream(seed, stream_tag::kUnitary, static_cast<std::uint64_t>(n));
  const CMatrix g = complex_gaussian(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

DensityMatrix random_density(Eigen::Index n, std::uint64_t seed) {
  auto rng = substream(seed, stream_tag::kDensity, static_cast<std::uint64_t>(n));
  const CMatrix g = complex_gaussian(n, n, rng);
  CMatrix rho = g * g.adjoint();
  rho = hermitian_part(rho / rho.trace().real());
  return DensityMatrix(std::move(rho));
}

GeneratorSpec lindblad(const CMatrix& h, std::vector<CMatrix> jumps) {
  return GeneratorSpec::from_lindblad(h, std::move(jumps));
}

GeneratorSpec hamiltonian(const CMatrix& h) { return GeneratorSpec::from_hamiltonian(h); }

GeneratorSpec random_lindblad(Eigen::Index n, int k, std::uint64_t seed, double scale) {
  if (n < 1 || k < 0) throw std::invalid_argument("random_lindblad: need n >= 1 and k >= 0");
  CMatrix h = random_hermitian(n, seed);
  std::vector<CMatrix> jumps;
  for (int j = 0; j < k; ++j) {
    auto rng = substream(seed, stream_tag::kLindblad, static_cast<std::uint64_t>(j));
    jumps.push_back(complex_gaussian(n, n, rng) / std::sqrt(static_cast<double>(n)));
  }
  const double norm = spectral_norm(lindblad_superop(h, jumps).rep());
  if (norm > 0.0 && scale > 0.0) {
    // L is linear in H and quadratic in the jumps.
    const double f = scale / norm;
    h *= f;
    for (auto& v : jumps) v *= std::sqrt(f);
  }
  return lindblad(h, std::move(jumps));
}

GeneratorSpec dephasing(Eigen::Index n) {
  CMatrix v = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) v(i, i) = std::polar(1.0, 2.0 * std::numbers::pi * i / n);
  if (n == 2) v = pauli_z();
  return lindblad(CMatrix::Zero(n, n), {v});
}

GeneratorSpec amplitude_damping() {
  CMatrix lower = CMatrix::Zero(2, 2);
  lower(0, 1) = 1.0;
  return lindblad(CMatrix::Zero(2, 2), {lower});
}

GeneratorSpec transpose_conjugated(const GeneratorSpec& spec) {
  const Superoperator tau = Superoperator::transpose_map(spec.dim());
  return GeneratorSpec::from_superop(compose(tau, compose(spec.generator(), tau)));
}

namespace {

CMatrix swap_first_two(Eigen::Index n) {
  if (n < 2) throw std::invalid_argument("flip generator needs n >= 2");
  CMatrix p = identity(n);
  p(0, 0) = p(1, 1) = 0.0;
  p(0, 1) = p(1, 0) = 1.0;
  return p;
}

}  // namespace

GeneratorSpec flip_nonpositive(Eigen::Index n) {
  return GeneratorSpec::from_superop(Superoperator::identity(n) - Superoperator::conjugation(swap_first_two(n)));
}

GeneratorSpec flip_perturbed(Eigen::Index n, std::uint64_t seed) {
  auto rng = substream(seed, stream_tag::kRecipe, 0);
  std::uniform_real_distribution<double> coeff(0.5, 2.0);
  const double c = coeff(rng);
  const Superoperator base = flip_nonpositive(n).generator();
  const Superoperator noise = random_lindblad(n, 1, seed, 0.1).generator();
  return GeneratorSpec::from_superop(c * base + noise);
}

GeneratorSpec positive_jump(Eigen::Index n, int k, std::uint64_t seed, double scale) {
  const CMatrix w = random_unitary(n, seed);
  const Superoperator jump = compose(Superoperator::conjugation(w), Superoperator::transpose_map(n));
  const double kappa = 0.5 * scale;
  const Superoperator dissipative = random_lindblad(n, k, seed, 0.5 * scale).generator();
  return GeneratorSpec::from_superop(kappa * (jump - Superoperator::identity(n)) + dissipative);
}

GeneratorSpec dilation(Eigen::Index n) { return GeneratorSpec::from_superop(Superoperator::identity(n)); }

GeneratorSpec phase_rotation(Eigen::Index n) {
  return GeneratorSpec::from_superop(Complex(0.0, 1.0) * Superoperator::identity(n));
}

const std::vector<std::string>& recipe_families() {
  static const std::vector<std::string> families = {
      "lindblad",        "hamiltonian",    "dephasing",     "amplitude_damping", "transpose_conjugated",
      "flip_nonpositive", "flip_perturbed", "positive_jump", "dilation",          "phase_rotation"};
  return families;
}

bool is_known_family(const std::string& family) {
  const auto& f = recipe_families();
  return std::find(f.begin(), f.end(), family) != f.end();
}

GeneratorSpec make_instance(const InstanceRecipe& r) {
  if (r.n < 1) throw std::invalid_argument("instance recipe: n must be >= 1");
  if (r.family == "lindblad") return random_lindblad(r.n, r.k, r.seed, r.scale);
  if (r.family == "hamiltonian") return hamiltonian(random_hermitian(r.n, r.seed, r.scale));
  if (r.family == "dephasing") return dephasing(r.n);
  if (r.family == "amplitude_damping") {
    if (r.n != 2) throw std::invalid_argument("amplitude_damping is defined on M(2) only");
    return amplitude_damping();
  }
  if (r.family == "transpose_conjugated") return transpose_conjugated(random_lindblad(r.n, r.k, r.seed, r.scale));
  if (r.family == "flip_nonpositive") return flip_nonpositive(r.n);
  if (r.family == "flip_perturbed") return flip_perturbed(r.n, r.seed);
  if (r.family == "positive_jump") return positive_jump(r.n, r.k, r.seed, r.scale);
  if (r.family == "dilation") return dilation(r.n);
  if (r.family == "phase_rotation") return phase_rotation(r.n);
  throw std::invalid_argument("unknown instance family '" + r.family + "'");
}

}  // namespace posgen
