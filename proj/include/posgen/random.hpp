#pragma once

#include <cstdint>
#include <random>

#include "posgen/matrixcore.hpp"

namespace posgen {

/// Independent generator for item `index` of a seeded computation. Results
/// depend only on (seed, tag, index), never on evaluation order.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index);

/// Stream tags keep unrelated consumers of one seed apart.
namespace stream_tag {
inline constexpr std::uint64_t kPositivity = 0x506f73;
inline constexpr std::uint64_t kContraction = 0x436f6e;
inline constexpr std::uint64_t kHermitian = 0x486572;
inline constexpr std::uint64_t kUnitary = 0x556e69;
inline constexpr std::uint64_t kDensity = 0x44656e;
inline constexpr std::uint64_t kLindblad = 0x4c696e;
inline constexpr std::uint64_t kProbe = 0x50726f;
inline constexpr std::uint64_t kRecipe = 0x526563;
}  // namespace stream_tag

/// Entries i.i.d. standard complex normal (real and imaginary parts N(0, 1/2)).
CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);
CVector random_unit_vector(Eigen::Index n, std::mt19937_64& rng);

}  // namespace posgen

namespace posgen {
/// A child seed for item `index`, for APIs that take a plain seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index);
}  // namespace posgen
