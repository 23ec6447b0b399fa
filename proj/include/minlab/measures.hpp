#pragma once

// Closed-form measurement-induced nonlocality (MiN, N_l) and geometric
// discord (D_l). Both are normalized as
//   d_l / (d_l - 1) * ||rho - Pi^(l)(rho)||^2
// with the maximum (MiN, marginal-preserving measurements only) or minimum
// (discord, all von Neumann measurements) over Pi^(l).

#include <cstddef>
#include <string_view>

#include "minlab/bloch.hpp"
#include "minlab/qcore.hpp"

namespace minlab {

/// Threshold on ||s^(l)|| separating the two qubit branches.
inline constexpr double kCoherentZeroTol = 1e-9;

/// Raised by the non-degenerate formula when the marginal has a repeated
/// eigenvalue; the oracle has to be used instead.
class DegenerateMarginal : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct KMatrix {
  std::size_t part = 0;
  std::size_t dim = 0;  // local dimension d_l
  RMatrix entries;      // (d_l^2 - 1) x (d_l^2 - 1)
};

struct GMatrix {
  std::size_t part = 0;
  RMatrix entries;
};

/// a_{j,i} = <j| lambda_i |j> / sqrt(2) for the basis vectors |j>.
struct IsometryRows {
  std::size_t part = 0;
  RMatrix rows;  // d_l x (d_l^2 - 1)
};

enum class EqualityCase { CaseI, CaseII, NotApplicable };

[[nodiscard]] std::string_view to_string(EqualityCase c);

struct EqualityVerdict {
  EqualityCase equality_case = EqualityCase::NotApplicable;
  double commutator_norm = 0.0;   // ||[s s^t, K]||_F
  bool eigen_condition = false;   // s/||s|| is an eigenvector of K with the required ordering
  bool triply_degenerate = false;
  bool predicted_equal = false;
};

// Pure states

[[nodiscard]] double min_pure(const PureState& psi, std::size_t part);
[[nodiscard]] double discord_pure(const PureState& psi, std::size_t part);
[[nodiscard]] double concurrence_pure_bipartite(const PureState& psi);
[[nodiscard]] double meyer_wallach(const PureState& psi);

// Mixed states via the Bloch representation

/// K_ab = sum over non-empty S not containing l of
///   w(S) sum_g t^{l+S}_{a g} t^{l+S}_{b g},  w(S) = d_l prod_{k in S} d_k / 2^{|S|+1}.
/// For qubits every weight is 1.
[[nodiscard]] KMatrix k_matrix(const BlochData& bloch, std::size_t part);

/// Sum of the largest d_l^2 - d_l eigenvalues of K.
[[nodiscard]] double min_bound(const KMatrix& k);

[[nodiscard]] IsometryRows isometry_rows(const MeasurementBasis& basis);

/// Unnormalized optimization term tr K - min tr(A K A^t), with A fixed by the
/// marginal's eigenbasis (non-degenerate case) or the qubit branch rule.
/// N_l = d_l / ((d_l - 1) prod d) * this.
[[nodiscard]] double min_qubit_term(const BlochData& bloch, std::size_t part);

[[nodiscard]] double min_qubit(const DensityOperator& rho, std::size_t part);
[[nodiscard]] double min_general_nondegenerate(const DensityOperator& rho, std::size_t part);

[[nodiscard]] GMatrix g_matrix(const BlochData& bloch, std::size_t part);
[[nodiscard]] double discord_qubit(const DensityOperator& rho, std::size_t part);

[[nodiscard]] EqualityVerdict equality_verdict(const BlochData& bloch, std::size_t part);

/// Ordering margin ||s||^2 + eta_s - max_{i != s} eta_i, where eta_s is the
/// eigenvalue of K whose eigenvector is best aligned with s. Positive or zero
/// where the ordering condition holds. Requires a qubit part with s != 0.
[[nodiscard]] double case_one_margin(const BlochData& bloch, std::size_t part);

/// Eigenvalues of a real symmetric matrix, non-increasing.
[[nodiscard]] RVector symmetric_eigenvalues(const RMatrix& m);

}  // namespace minlab
