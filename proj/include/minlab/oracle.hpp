#pragma once

// Definition-level evaluation of MiN and geometric discord by searching over
// von Neumann measurements on one subsystem. Works on raw matrices only and
// never touches the Bloch representation, so it can arbitrate the closed
// forms in measures.hpp.

#include <cstdint>
#include <functional>
#include <vector>

#include "minlab/qcore.hpp"

namespace minlab {

struct SearchConfig {
  int grid_points = 200;
  int restarts = 4;
  int refine_iters = 8;
  std::uint64_t seed = 1;
  double tol = 1e-13;

  void validate() const;
};

struct OracleResult {
  MeasurementBasis basis;  // optimal basis found
  double value = 0.0;      // normalized measure
  double coarse_value = 0.0;  // best normalized value before local refinement
  long evaluations = 0;
  bool converged = true;
};

/// Called with every basis a search evaluates.
using BasisObserver = std::function<void(const MeasurementBasis&)>;

/// ||rho - Pi(rho)||^2 = ||rho||^2 - 2 tr(rho Pi(rho)) + ||Pi(rho)||^2
[[nodiscard]] double distance_sq(const DensityOperator& rho, const MeasurementBasis& basis);

/// True iff sum_k P_k rho^(l) P_k equals rho^(l) within `tol` (max-abs).
[[nodiscard]] bool marginal_invariant(const DensityOperator& rho, const MeasurementBasis& basis,
                                      double tol = 1e-8);

/// Maximizes the distance over eigenbases of rho^(l), rotating freely inside
/// degenerate eigenspaces.
[[nodiscard]] OracleResult min_direct(const DensityOperator& rho, std::size_t part,
                                      const SearchConfig& cfg = {},
                                      const BasisObserver& observer = {});

/// Minimizes the distance over all orthonormal bases of subsystem `part`.
[[nodiscard]] OracleResult discord_direct(const DensityOperator& rho, std::size_t part,
                                          const SearchConfig& cfg = {});

/// Fibonacci point set of `count` unit vectors.
[[nodiscard]] std::vector<Eigen::Vector3d> fibonacci_sphere(int count);

/// Qubit basis {|+n>, |-n>} for a Bloch-sphere axis n.
[[nodiscard]] CMatrix qubit_basis(const Eigen::Vector3d& axis);

}  // namespace minlab
