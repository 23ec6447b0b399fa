#pragma once

// Named states and the mixed-state families rho(p) = p|a><a| + (1-p)|b><b|.
// Basis labels read |i_1 i_2 i_3> with qubit 1 leftmost (most significant).

#include <cstdint>
#include <optional>
#include <string_view>

#include "minlab/qcore.hpp"

namespace minlab {

enum class Family {
  GhzW,           // p GHZ + (1-p) W
  WtW,            // p W~ + (1-p) W, W~ = X(x)X(x)X W
  GhzGhzMinus,    // p GHZ + (1-p) GHZ-
  GhzGhz1,        // p GHZ + (1-p) GHZ_1
};

struct FamilySpec {
  Family family;
  double p;
};

[[nodiscard]] std::string_view family_name(Family f);
[[nodiscard]] std::optional<Family> parse_family(std::string_view name);

/// (|0...0> + |1...1>)/sqrt(2) on n >= 2 qubits.
[[nodiscard]] PureState ghz(std::size_t n);
/// (|001> + |010> + |100>)/sqrt(3)
[[nodiscard]] PureState w3();
/// (|110> + |101> + |011>)/sqrt(3)
[[nodiscard]] PureState w3_flipped();
/// (|000> - |111>)/sqrt(2)
[[nodiscard]] PureState ghz_minus();
/// (|001> + |110>)/sqrt(2)
[[nodiscard]] PureState ghz_1();
/// (|00> + |11>)/sqrt(2)
[[nodiscard]] PureState bell();

/// Computational basis product state from digit labels.
[[nodiscard]] PureState basis_state(const DimensionProfile& profile, std::span<const std::size_t> digits);

[[nodiscard]] DensityOperator family(const FamilySpec& spec);

/// Normalized complex Gaussian vector; deterministic per seed.
[[nodiscard]] PureState haar_pure(const DimensionProfile& profile, std::uint64_t seed);

/// Mixture of `rank` Haar pure states with flat-Dirichlet weights.
[[nodiscard]] DensityOperator random_mixed(const DimensionProfile& profile, std::size_t rank,
                                           std::uint64_t seed);

/// V_1 (x) ... (x) V_n with independent Haar V_k.
[[nodiscard]] CMatrix random_local_unitary(const DimensionProfile& profile, std::uint64_t seed);

}  // namespace minlab
