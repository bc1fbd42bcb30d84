#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "posgen/duality.hpp"
#include "posgen/instances.hpp"
#include "test_util.hpp"

using namespace posgen;
using posgen::testing::ginibre;

namespace {

CMatrix plus_state() { return 0.5 * (identity(2) + pauli_x()); }

double pairing_gap(const Superoperator& l, double t, const CMatrix& rho, const CMatrix& a) {
  const CMatrix rho_t = predual_evolve(l, t, rho);
  const Complex lhs = (rho_t.adjoint() * a).trace();
  const Complex rhs = (rho.adjoint() * evolve(SemigroupHandle(l), t).apply(a)).trace();
  return std::abs(lhs - rhs);
}

}  // namespace

TEST_CASE("DensityMatrix validation") {
  CHECK_NOTHROW(DensityMatrix{plus_state()});
  CHECK_THROWS_AS(DensityMatrix(identity(2)), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix{pauli_z()}, std::invalid_argument);
  CMatrix shift = CMatrix::Zero(2, 2);
  shift(0, 1) = 1.0;
  CHECK_THROWS_AS(DensityMatrix(identity(2) / 2.0 + shift), std::invalid_argument);
}

TEST_CASE("predual_generator examples") {
  const CMatrix h = random_hermitian(3, 1);
  const Superoperator l = hamiltonian(h).generator();
  const Complex i(0.0, 1.0);
  const Superoperator want =
      Superoperator::from_function(3, [&](const CMatrix& rho) { return CMatrix(-i * (h * rho - rho * h)); });
  CHECK(max_abs(predual_generator(l).rep() - want.rep()) < 1e-13);

  const Superoperator d = dephasing(2).generator();
  CHECK(max_abs(predual_generator(d).rep() - d.rep()) == 0.0);
  CHECK(max_abs(d.rep().imag()) == 0.0);

  CHECK(max_abs(predual_generator(Superoperator::zero(2)).rep()) == 0.0);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Superoperator lg = random_lindblad(3, 2, seed, 4.0).generator();
    const CMatrix rho = ginibre(3, 10 + seed), a = ginibre(3, 20 + seed);
    CHECK(std::abs(hs_inner(predual_generator(lg).apply(rho), a) - hs_inner(rho, lg.apply(a))) <= 1e-10);
  }
}

TEST_CASE("predual_evolve examples") {
  const CMatrix rho = random_density(3, 5).matrix();
  CHECK(max_abs(predual_evolve(Superoperator::zero(3), 2.0, rho) - rho) == 0.0);

  for (double t : {0.5, 1.0, 2.0}) {
    const CMatrix got = predual_evolve(dephasing(2).generator(), t, plus_state());
    CHECK(max_abs(got - 0.5 * (identity(2) + std::exp(-2 * t) * pauli_x())) < 1e-13);
  }

  const CMatrix h = random_hermitian(2, 9);
  const Complex i(0.0, 1.0);
  const CMatrix r0 = random_density(2, 9).matrix();
  for (double t : {0.3, 1.0, 5.0}) {
    const CMatrix u = mat_exp(-i * t * h);
    const CMatrix got = predual_evolve(hamiltonian(h).generator(), t, r0);
    CHECK(max_abs(got - u * r0 * u.adjoint()) < 1e-12);
    CHECK(std::abs((got * got).trace() - (r0 * r0).trace()) < 1e-12);
  }
  CHECK_THROWS(predual_evolve(Superoperator::zero(2), -1.0, r0));
}

TEST_CASE("property: pairing duality on every family") {
  for (const std::string& family : recipe_families()) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const Superoperator l = make_instance({family, 2, seed, 1, 2.0}).generator();
      for (double t : {0.5, 1.0, 2.0}) {
        const CMatrix rho = ginibre(2, 31 * seed + 1), a = ginibre(2, 31 * seed + 2);
        const double scale = std::max(1.0, spectral_norm(evolve(SemigroupHandle(l), t).rep()));
        CHECK(pairing_gap(l, t, rho, a) <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("kossakowski_check examples") {
  const std::vector<double> ts = {0.5, 1.0, 2.0};
  const KossakowskiProbes probes = make_kossakowski_probes(3, 50, 20, 4);
  REQUIRE(probes.states.size() == 50);
  REQUIRE(probes.pairs.size() == 20);

  const KossakowskiReport lind = kossakowski_check(random_lindblad(3, 2, 1, 4.0).generator(), probes, ts);
  CHECK(lind.trace_preserving_margin <= 1e-10);
  CHECK(lind.l1_zero_margin <= 1e-12);
  CHECK(lind.state_positivity.min_eig >= -1e-10);
  CHECK_FALSE(lind.state_positivity.violated);
  CHECK(lind.equivalence_consistent);
  CHECK(lind.pairing_margin <= 1e-9);

  const KossakowskiReport dil = kossakowski_check(dilation(3).generator(), probes, ts);
  CHECK(dil.trace_preserving_margin == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-9));
  CHECK(dil.l1_zero_margin == doctest::Approx(1.0));
  CHECK_FALSE(dil.trace_preserving);
  CHECK_FALSE(dil.l1_zero);
  CHECK(dil.equivalence_consistent);

  const KossakowskiReport ham = kossakowski_check(hamiltonian(random_hermitian(3, 2)).generator(), probes, ts);
  CHECK(ham.trace_preserving_margin <= 1e-12);
  CHECK(ham.state_positivity.min_eig >= -1e-12);
  CHECK(ham.equivalence_consistent);
}

TEST_CASE("property: trace preservation iff L(1) = 0 on every family") {
  const KossakowskiProbes probes = make_kossakowski_probes(2, 10, 5, 1);
  for (const std::string& family : recipe_families()) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const KossakowskiReport r =
          kossakowski_check(make_instance({family, 2, seed, 1, 4.0}).generator(), probes, {0.5, 1.0, 2.0}, 1e-6);
      CHECK((r.trace_preserving_margin <= 1e-6) == (r.l1_zero_margin <= 1e-6));
    }
  }
}

TEST_CASE("property: positivity transfers to the predual") {
  const KossakowskiProbes probes = make_kossakowski_probes(2, 30, 1, 2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const GeneratorSpec spec = positive_jump(2, 1, seed, 4.0);
    const SemigroupHandle h(spec);
    bool positive = true;
    for (double t : {0.5, 1.0, 2.0}) positive = positive && positivity_check(evolve(h, t)).status != ConeStatus::violated;
    REQUIRE(positive);
    CHECK(kossakowski_check(spec.generator(), probes, {0.5, 1.0, 2.0}).state_positivity.min_eig >= -1e-9);
  }
}
