#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "posgen/instances.hpp"
#include "test_util.hpp"

using namespace posgen;
using posgen::testing::exp_power_series;
using posgen::testing::ginibre;
using posgen::testing::rel_err;

TEST_CASE("classify_element on the unit, a signature matrix and a shift") {
  const ElementFlags one = classify_element(identity(2), 1e-10);
  CHECK(one.hermitian);
  CHECK(one.psd);
  CHECK(one.unitary);
  CHECK(one.min_eig == doctest::Approx(1.0));

  const ElementFlags sig = classify_element(pauli_z(), 1e-10);
  CHECK(sig.hermitian);
  CHECK_FALSE(sig.psd);
  CHECK(sig.min_eig == doctest::Approx(-1.0));
  CHECK(sig.unitary);

  CMatrix shift = CMatrix::Zero(2, 2);
  shift(0, 1) = 1.0;
  const ElementFlags s = classify_element(shift, 1e-10);
  CHECK_FALSE(s.hermitian);
  CHECK_FALSE(s.psd);
  CHECK_FALSE(s.unitary);
}

TEST_CASE("classify_element rejects non-square input") {
  CHECK_THROWS_AS(classify_element(CMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("mat_exp closed forms") {
  CHECK(max_abs(mat_exp(CMatrix::Zero(3, 3)) - identity(3)) == 0.0);

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 0.7;
  d(1, 1) = Complex(-1.3, 0.4);
  const CMatrix e = mat_exp(d);
  CHECK(std::abs(e(0, 0) - std::exp(Complex(0.7))) < 1e-14);
  CHECK(std::abs(e(1, 1) - std::exp(Complex(-1.3, 0.4))) < 1e-14);
  CHECK(std::abs(e(0, 1)) < 1e-15);

  const double theta = std::numbers::pi / 2;
  CMatrix gen(2, 2);
  gen << 0.0, -theta, theta, 0.0;
  CMatrix rotation(2, 2);
  rotation << 0.0, -1.0, 1.0, 0.0;
  CHECK(max_abs(exp_power_series(gen) - rotation) < 1e-12);
  CHECK(max_abs(mat_exp(gen) - rotation) < 1e-12);
  CHECK(max_abs(mat_exp_pade(gen) - rotation) < 1e-12);
}

TEST_CASE("mat_exp on a Jordan block (non-diagonalizable)") {
  for (double a : {-3.0, 0.5, 2.0}) {
    CMatrix j(2, 2);
    j << a, 1.0, 0.0, a;
    CMatrix want(2, 2);
    want << std::exp(a), std::exp(a), 0.0, std::exp(a);
    CHECK(rel_err(mat_exp(j), want) < 1e-13);
  }
}

TEST_CASE("mat_exp Pade path matches the Taylor oracle for small norms") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const CMatrix g = ginibre(4, seed);
    const CMatrix m = g / spectral_norm(g) * (0.1 * static_cast<double>(seed) / 2.0);
    CHECK(rel_err(mat_exp_pade(m), exp_power_series(m)) < 1e-13);
  }
}

TEST_CASE("mat_exp relative error at norm up to 10 against an eigenbasis oracle") {
  // M = S D S^{-1} with a well-conditioned non-unitary S, so the exponential
  // is known to working precision and the input is non-normal.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Eigen::Index n = 6;
    const CMatrix u = random_unitary(n, seed);
    CMatrix nil = ginibre(n, seed + 100).triangularView<Eigen::StrictlyUpper>();
    nil *= 0.2 / spectral_norm(nil);
    const CMatrix s = u * (identity(n) + nil);
    CVector d = ginibre(n, seed + 200).col(0);
    const CMatrix m0 = s * d.asDiagonal() * s.inverse();
    const double f = 10.0 / spectral_norm(m0);
    const CMatrix m = f * m0;
    const CVector ed = (f * d).array().exp();
    const CMatrix want = s * ed.asDiagonal() * s.inverse();
    CHECK(rel_err(mat_exp(m), want) < 1e-12);
  }
}

TEST_CASE("spectrum examples") {
  const SpectralData one = spectrum(identity(3));
  REQUIRE(one.eigenvalues.size() == 3);
  for (const auto& ev : one.eigenvalues) CHECK(std::abs(ev - 1.0) < 1e-15);
  REQUIRE(one.min_hermitian_eigenvalue);

  const SpectralData px = spectrum(pauli_x());
  CHECK(px.eigenvalues[0].real() == doctest::Approx(-1.0));
  CHECK(px.eigenvalues[1].real() == doctest::Approx(1.0));

  CVector v(2);
  v << Complex(0.6, 0.0), Complex(0.0, 0.8);
  const CMatrix p = v * v.adjoint();
  const SpectralData shifted = spectrum(identity(2) - p);
  CHECK(std::abs(shifted.eigenvalues[0]) < 1e-15);
  CHECK(std::abs(shifted.eigenvalues[1] - 1.0) < 1e-15);

  CMatrix nonherm(2, 2);
  nonherm << 1.0, 2.0, 0.0, -1.0;
  const SpectralData nh = spectrum(nonherm);
  CHECK_FALSE(nh.min_hermitian_eigenvalue.has_value());
  CHECK(std::abs(nh.eigenvalues[0] + 1.0) < 1e-14);
  CHECK(std::abs(nh.eigenvalues[1] - 1.0) < 1e-14);
}

TEST_CASE("spectral_norm examples") {
  CHECK(spectral_norm(identity(4)) == doctest::Approx(1.0).epsilon(1e-12));
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -4.0;
  CHECK(spectral_norm(d) == doctest::Approx(4.0).epsilon(1e-12));
  CVector v = ginibre(3, 5).col(0);
  CVector w = ginibre(3, 6).col(0);
  CHECK(spectral_norm(v.normalized() * w.normalized().adjoint()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("property: random Hermitian matrices are Hermitian with real spectra") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const CMatrix h = random_hermitian(4, seed, 3.0);
    CHECK(classify_element(h).hermitian);
    const SpectralData sd = spectrum(h);
    for (const auto& ev : sd.eigenvalues) CHECK(std::abs(ev.imag()) <= 1e-10);
    // The general solver agrees on realness.
    CMatrix perturbed = h;
    Eigen::ComplexEigenSolver<CMatrix> es(perturbed, false);
    CHECK(es.eigenvalues().imag().cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("property: spectral norm is unitarily invariant") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const CMatrix m = ginibre(4, seed);
    const CMatrix u = random_unitary(4, seed + 1000);
    const CMatrix v = random_unitary(4, seed + 2000);
    CHECK(std::abs(spectral_norm(u * m * v) - spectral_norm(m)) <= 1e-10 * spectral_norm(m));
  }
}

TEST_CASE("property: exp(M + M') = exp(M) exp(M') for commuting pairs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const CMatrix u = random_unitary(3, seed);
    CVector d1 = ginibre(3, seed + 10).col(0);
    CVector d2 = ginibre(3, seed + 20).col(0);
    const CMatrix m1 = u * d1.asDiagonal() * u.adjoint();
    const CMatrix m2 = u * d2.asDiagonal() * u.adjoint();
    CHECK(max_abs(mat_exp(m1 + m2) - mat_exp(m1) * mat_exp(m2)) <= 1e-10 * std::max(1.0, max_abs(mat_exp(m1 + m2))));
    // The Pade path (non-normal shortcut disabled) agrees as well.
    CHECK(max_abs(mat_exp_pade(m1 + m2) - mat_exp_pade(m1) * mat_exp_pade(m2)) <=
          1e-10 * std::max(1.0, max_abs(mat_exp(m1 + m2))));
  }
}

TEST_CASE("property: spectrum(1 - a) is the shifted spectrum of a") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const CMatrix a = random_hermitian(3, seed);
    const SpectralData sa = spectrum(a);
    const SpectralData shifted = spectrum(identity(3) - a);
    // Ascending order reverses under x -> 1 - x.
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(std::abs(shifted.eigenvalues[i].real() - (1.0 - sa.eigenvalues[2 - i].real())) < 1e-12);
  }
}
