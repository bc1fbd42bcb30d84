#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "posgen/semigroup.hpp"

namespace posgen {

class DensityMatrix;

/// Gaussian unitary ensemble sample (G + G^dagger) / 2, times scale.
CMatrix random_hermitian(Eigen::Index n, std::uint64_t seed, double scale = 1.0);
/// Haar unitary: QR of a complex Ginibre matrix with the phases of diag(R)
/// moved into Q.
CMatrix random_unitary(Eigen::Index n, std::uint64_t seed);
/// G G^dagger / Tr(G G^dagger) for complex Ginibre G.
DensityMatrix random_density(Eigen::Index n, std::uint64_t seed);

GeneratorSpec lindblad(const CMatrix& h, std::vector<CMatrix> jumps);
GeneratorSpec hamiltonian(const CMatrix& h);
/// Random H and k random jumps, rescaled so that ||L||_2 = scale.
GeneratorSpec random_lindblad(Eigen::Index n, int k, std::uint64_t seed, double scale);

/// Jump operator diag(1, w, w^2, ...) with w = exp(2 pi i / n); on M(2) this
/// is sigma_z and L(x) = sigma_z x sigma_z - x.
GeneratorSpec dephasing(Eigen::Index n = 2);
/// Amplitude damping on M(2): H = 0, V = sigma_minus = |0><1|.
GeneratorSpec amplitude_damping();

/// L'(x) = (L(x^T))^T, generating tau o T_t o tau.
GeneratorSpec transpose_conjugated(const GeneratorSpec& spec);

/// L(x) = x - P x P with P the swap of the first two basis vectors
/// (sigma_x on M(2)). Symmetric and L(1) = 0, but exp(tL) is not positive
/// and has norm e^{2t}.
GeneratorSpec flip_nonpositive(Eigen::Index n = 2);
/// c * flip + (small Lindblad term), c in [0.5, 2]; stays non-positive.
GeneratorSpec flip_perturbed(Eigen::Index n, std::uint64_t seed);

/// L = kappa (Phi - id) + L_lindblad with Phi(x) = W^dagger x^T W for a Haar
/// W: a positive, unital, contractive semigroup that is not completely
/// positive for generic seeds.
GeneratorSpec positive_jump(Eigen::Index n, int k, std::uint64_t seed, double scale);

/// L(x) = x. L(1) = 1, so T_t(1) = e^t 1.
GeneratorSpec dilation(Eigen::Index n);
/// L(x) = i x. Generates x -> e^{it} x, which is not symmetric.
GeneratorSpec phase_rotation(Eigen::Index n);

struct InstanceRecipe {
  std::string family;
  Eigen::Index n = 2;
  std::uint64_t seed = 0;
  int k = 1;
  double scale = 4.0;
};

const std::vector<std::string>& recipe_families();
bool is_known_family(const std::string& family);
/// Deterministic: equal recipes give bit-identical generators.
GeneratorSpec make_instance(const InstanceRecipe& recipe);

}  // namespace posgen
