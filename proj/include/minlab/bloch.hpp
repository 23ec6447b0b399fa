#pragma once

// Generalized Gell-Mann bases and the Bloch (coherent vector / correlation
// tensor) representation of multipartite density operators.
//
// Stored quantities are the unweighted moments
//   t_{a1..aM} = tr(rho lambda^(k1)_{a1} ... lambda^(kM)_{aM}).
// The d_{k1}...d_{kM} / 2^M weights of the expansion are applied only when
// rebuilding the operator:
//   rho = 1/prod(d) [ I + sum_S prod_{k in S}(d_k / 2) sum_a t^S_a lambda^S_a ].

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "minlab/qcore.hpp"

namespace minlab {

/// d^2 - 1 Hermitian traceless generators with tr(l_a l_b) = 2 delta_ab.
/// Order: symmetric off-diagonal (j<k, row-major), antisymmetric off-diagonal
/// (same pair order), then the d - 1 diagonal generators.
struct OperatorBasis {
  std::size_t dim = 0;
  std::vector<CMatrix> generators;
};

[[nodiscard]] OperatorBasis generators(std::size_t d);

/// Dense real array, row-major over its axes.
struct RealTensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  [[nodiscard]] std::size_t size() const { return data.size(); }
  [[nodiscard]] double norm_sq() const;
  [[nodiscard]] double at(std::span<const std::size_t> index) const;
};

using Subset = std::vector<std::size_t>;

class BlochData {
 public:
  BlochData() = default;
  explicit BlochData(DimensionProfile profile) : profile_(std::move(profile)) {}

  [[nodiscard]] const DimensionProfile& profile() const { return profile_; }

  [[nodiscard]] const RVector& coherent(std::size_t part) const;
  void set_coherent(std::size_t part, RVector s);

  /// Moments of a subset with at least two parts.
  [[nodiscard]] const RealTensor& tensor(const Subset& subset) const;
  void set_tensor(Subset subset, RealTensor t);

  [[nodiscard]] bool has_coherent(std::size_t part) const { return coherent_.contains(part); }
  [[nodiscard]] bool has_tensor(const Subset& subset) const { return tensors_.contains(subset); }

  [[nodiscard]] const std::map<std::size_t, RVector>& coherent_vectors() const { return coherent_; }
  [[nodiscard]] const std::map<Subset, RealTensor>& tensors() const { return tensors_; }

 private:
  DimensionProfile profile_;
  std::map<std::size_t, RVector> coherent_;
  std::map<Subset, RealTensor> tensors_;
};

/// Unweighted moments for a strictly increasing, non-empty subset. A
/// single-element subset yields the coherent vector as a rank-1 tensor.
[[nodiscard]] RealTensor correlation_tensor(const DensityOperator& rho, const Subset& subset);

[[nodiscard]] BlochData bloch_decompose(const DensityOperator& rho);

[[nodiscard]] DensityOperator bloch_reconstruct(const BlochData& data, const DimensionProfile& profile);

/// Every non-empty subset of {0..n-1} in increasing size, then lexicographic.
[[nodiscard]] std::vector<Subset> all_subsets(std::size_t n);

}  // namespace minlab
