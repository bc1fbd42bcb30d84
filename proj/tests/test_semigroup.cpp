#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "posgen/instances.hpp"
#include "test_util.hpp"

using namespace posgen;
using posgen::testing::ginibre;
using posgen::testing::rel_err;

namespace {

SemigroupHandle zero_handle(Eigen::Index n) { return SemigroupHandle(Superoperator::zero(n)); }

std::vector<double> sorted_real_eigs(const Superoperator& s) {
  std::vector<double> out;
  for (const auto& ev : spectrum(s.rep()).eigenvalues) out.push_back(ev.real());
  std::sort(out.begin(), out.end());
  return out;
}

double opnorm(const Superoperator& s) { return spectral_norm(s.rep()); }

}  // namespace

TEST_CASE("GeneratorSpec construction") {
  CHECK_THROWS_AS(GeneratorSpec::from_hamiltonian(ginibre(2, 1)), std::invalid_argument);
  CHECK_THROWS_AS(lindblad(ginibre(2, 1), {}), std::invalid_argument);
  const GeneratorSpec spec = random_lindblad(3, 2, 1, 4.0);
  CHECK(spec.kind() == GeneratorKind::lindblad);
  CHECK(max_abs(spec.generator().apply(identity(3))) <= 1e-12);
  CHECK(is_symmetric_map(spec.generator(), 1e-12).verdict);
  CHECK(to_string(GeneratorKind::explicit_map) == "explicit");
}

TEST_CASE("evolve examples") {
  const SemigroupHandle z = zero_handle(2);
  CHECK(max_abs(evolve(z, 3.7).rep() - identity(4)) == 0.0);
  CHECK_THROWS(evolve(z, -1.0));
  CHECK(evolve(SemigroupHandle(random_lindblad(2, 1, 2, 4.0)), 0.0).rep() == identity(4));

  const SemigroupHandle deph(dephasing(2));
  for (double t : {0.1, 1.0, 2.5}) {
    const CMatrix x = ginibre(2, 7);
    const CMatrix y = evolve(deph, t).apply(x);
    CHECK(std::abs(y(0, 0) - x(0, 0)) < 1e-13);
    CHECK(std::abs(y(1, 1) - x(1, 1)) < 1e-13);
    CHECK(std::abs(y(0, 1) - std::exp(-2 * t) * x(0, 1)) < 1e-13);
    CHECK(std::abs(y(1, 0) - std::exp(-2 * t) * x(1, 0)) < 1e-13);
  }

  const SemigroupHandle ham(hamiltonian(pauli_z()));
  const Complex i(0.0, 1.0);
  for (double t : {0.3, 1.0, 4.0}) {
    const CMatrix x = ginibre(2, 8);
    const CMatrix u = mat_exp(i * t * pauli_z());
    CHECK(max_abs(evolve(ham, t).apply(x) - u * x * u.adjoint()) <= 1e-10);
  }
}

TEST_CASE("resolvent examples") {
  const SemigroupHandle z = zero_handle(2);
  CHECK(max_abs(resolvent(z, 2.0).rep() - 0.5 * identity(4)) < 1e-15);
  CHECK_THROWS_AS(resolvent(z, 0.0), ResolventPoleError);
  CHECK_THROWS_AS(resolvent(SemigroupHandle(flip_nonpositive(2)), 1.5), ResolventPoleError);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SemigroupHandle h(random_lindblad(3, 2, seed, 4.0));
    for (double lambda : lambda_grid(h)) {
      const Superoperator r = resolvent(h, lambda);
      CHECK(max_abs(r.apply(identity(3)) - identity(3) / lambda) <= 1e-12);
      const Superoperator check = compose(lambda * identity_superop(3) - h.generator(), r);
      CHECK(max_abs(check.rep() - identity(9)) <= 1e-10);
    }
  }

  const std::vector<double> eigs = sorted_real_eigs(resolvent(SemigroupHandle(dephasing(2)), 1.0));
  CHECK(eigs[0] == doctest::Approx(1.0 / 3.0));
  CHECK(eigs[1] == doctest::Approx(1.0 / 3.0));
  CHECK(eigs[2] == doctest::Approx(1.0));
  CHECK(eigs[3] == doctest::Approx(1.0));
}

TEST_CASE("laplace_resolvent examples") {
  CHECK(max_abs(laplace_resolvent(zero_handle(2), 1.0).rep() - identity(4)) <= 1e-8);
  const SemigroupHandle deph(dephasing(2));
  CHECK(rel_err(laplace_resolvent(deph, 1.0).rep(), resolvent(deph, 1.0).rep()) <= 1e-6);
  const SemigroupHandle ham(hamiltonian(pauli_z()));
  CHECK(rel_err(laplace_resolvent(ham, 1.0).rep(), resolvent(ham, 1.0).rep()) <= 1e-6);
  CHECK_THROWS_AS(laplace_resolvent(deph, 0.0), DecayError);
  CHECK_THROWS_AS(laplace_resolvent(SemigroupHandle(flip_nonpositive(2)), 2.0), DecayError);
}

TEST_CASE("gauss_legendre integrates polynomials of degree 2m - 1 exactly") {
  for (int m : {1, 2, 5, 8}) {
    const GaussLegendreRule rule = gauss_legendre(m);
    for (int deg = 0; deg <= 2 * m - 1; ++deg) {
      double sum = 0.0;
      for (int j = 0; j < m; ++j) sum += rule.weights[j] * std::pow(rule.nodes[j], deg);
      const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
      CHECK(std::abs(sum - exact) < 1e-14);
    }
  }
}

TEST_CASE("euler_product examples") {
  const SemigroupHandle z = zero_handle(2);
  for (int m : {1, 7, 64}) CHECK(max_abs(euler_product(z, 1.3, m).rep() - identity(4)) <= 1e-15);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SemigroupHandle h(random_lindblad(3, 1, seed, 4.0));
    for (int m : {1, 8, 33}) CHECK(max_abs(euler_product(h, 1.0, m).apply(identity(3)) - identity(3)) <= 1e-12);
  }

  const SemigroupHandle deph(dephasing(2));
  const Superoperator t1 = evolve(deph, 1.0);
  double prev = opnorm(euler_product(deph, 1.0, 8) - t1);
  for (int m : {16, 32, 64}) {
    const double err = opnorm(euler_product(deph, 1.0, m) - t1);
    CHECK(err / prev >= 0.4);
    CHECK(err / prev <= 0.6);
    prev = err;
  }
}

TEST_CASE("yosida_generator examples") {
  const SemigroupHandle z = zero_handle(2);
  CHECK(max_abs(yosida_generator(z, 3.0).rep()) <= 1e-14);

  const SemigroupHandle deph(dephasing(2));
  const std::vector<double> eigs = sorted_real_eigs(yosida_generator(deph, 10.0));
  CHECK(eigs[0] == doctest::Approx(-5.0 / 3.0));
  CHECK(eigs[1] == doctest::Approx(-5.0 / 3.0));
  CHECK(std::abs(eigs[3]) < 1e-12);

  double prev = 1e300;
  for (double lambda : {10.0, 100.0, 1000.0}) {
    const double err = opnorm(yosida_generator(deph, lambda) - deph.generator());
    // Scalar bound mu^2 / (lambda - mu) at mu = -2.
    CHECK(err <= 4.0 / (lambda + 2.0) + 1e-12);
    CHECK(err < prev);
    prev = err;
  }

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SemigroupHandle h(random_lindblad(3, 2, seed, 4.0));
    for (double lambda : lambda_grid(h))
      CHECK(max_abs(yosida_generator(h, lambda).rep() - yosida_generator_product_form(h, lambda).rep()) <=
            1e-10 * lambda);
  }
}

TEST_CASE("yosida_semigroup examples") {
  for (double lambda : {1.0, 10.0, 1000.0})
    CHECK(max_abs(yosida_semigroup(zero_handle(2), lambda, 2.0).rep() - identity(4)) <= 1e-10);

  const SemigroupHandle deph(dephasing(2));
  const Superoperator t1 = evolve(deph, 1.0);
  double prev = 1e300;
  for (double lambda : {10.0, 100.0, 1000.0}) {
    const double err = opnorm(yosida_semigroup(deph, lambda, 1.0) - t1);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 1e-2);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SemigroupHandle h(random_lindblad(2, 1, seed, 4.0));
    for (double lambda : lambda_grid(h)) {
      const ConeVerdict v = positivity_check(yosida_semigroup(h, lambda, 1.0));
      CHECK(v.status != ConeStatus::violated);
    }
  }
}

TEST_CASE("spectral_abscissa examples") {
  CHECK(spectral_abscissa(Superoperator::zero(3)) == 0.0);
  CHECK(std::abs(spectral_abscissa(dephasing(2).generator())) < 1e-12);
  CHECK(spectral_abscissa(flip_nonpositive(2).generator()) == doctest::Approx(2.0));
  const SemigroupHandle h(random_lindblad(3, 2, 4, 4.0));
  double mx = -1e300;
  for (const auto& ev : h.eigenvalues()) mx = std::max(mx, ev.real());
  CHECK(std::abs(mx - h.spectral_abscissa()) <= 1e-10);
  CHECK(max_abs(h.schur_u() * h.schur_t() * h.schur_u().adjoint() - h.generator().rep()) <= 1e-12);
}

TEST_CASE("lambda_grid") {
  const std::vector<double> g = lambda_grid(SemigroupHandle(flip_nonpositive(2)));
  REQUIRE(g.size() == 3);
  CHECK(g[0] == doctest::Approx(3.0));
  CHECK(g[2] == doctest::Approx(300.0));
  CHECK(lambda_grid(zero_handle(2))[1] == doctest::Approx(10.0));
}

TEST_CASE("property: semigroup law") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 5.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SemigroupHandle h(random_lindblad(2 + static_cast<Eigen::Index>(seed % 3), 2, seed, 4.0));
    const double s = unif(rng), t = unif(rng);
    CHECK(opnorm(compose(evolve(h, s), evolve(h, t)) - evolve(h, s + t)) <= 1e-9);
  }
}

TEST_CASE("property: resolvent identity") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SemigroupHandle h(random_lindblad(3, 1, seed, 4.0));
    const double lambda = 0.7, mu = 13.0;
    const Superoperator lhs = resolvent(h, lambda) - resolvent(h, mu);
    const Superoperator rhs = (mu - lambda) * compose(resolvent(h, lambda), resolvent(h, mu));
    CHECK(opnorm(lhs - rhs) <= 1e-9);
  }
}

TEST_CASE("property: Yosida factorization") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SemigroupHandle h(random_lindblad(3, 2, seed, 4.0));
    for (double lambda : {10.0, 100.0, 1000.0}) {
      const Superoperator a = superop_exp(1.0 * yosida_generator(h, lambda));
      const Superoperator b = yosida_semigroup(h, lambda, 1.0);
      CHECK(opnorm(a - b) <= 1e-9);
    }
  }
}

TEST_CASE("property: positive resolvents give positive Euler products") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SemigroupHandle h(random_lindblad(2, 1, seed, 4.0));
    bool resolvent_ok = true;
    for (double lambda : lambda_grid(h))
      resolvent_ok = resolvent_ok && positivity_check(resolvent(h, lambda)).status != ConeStatus::violated;
    REQUIRE(resolvent_ok);
    for (int m : {1, 4, 16}) CHECK(positivity_check(euler_product(h, 1.0, m)).status != ConeStatus::violated);
  }
}
