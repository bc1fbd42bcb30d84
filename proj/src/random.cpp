#include "posgen/random.hpp"

#include <cmath>

namespace posgen {

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix m(rows, cols);
  // Fill in a fixed order so the output does not depend on Eigen internals.
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

CVector random_unit_vector(Eigen::Index n, std::mt19937_64& rng) {
  CVector v = complex_gaussian(n, 1, rng).col(0);
  return v / v.norm();
}

}  // namespace posgen

namespace posgen {
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  auto rng = substream(seed, tag, index);
  return rng();
}
}  // namespace posgen
