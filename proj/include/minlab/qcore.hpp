#pragma once

// Dense complex linear algebra for small multipartite systems.
//
// Product-space basis states |i_1 i_2 ... i_n> are ordered row-major, i.e.
// i_1 is the most significant digit. Subsystem indices are 0-based in this
// API; only the command-line layer speaks 1-based part numbers.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace minlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Absolute tolerance for Hermiticity, trace and normalization checks.
inline constexpr double kConstructionTol = 1e-9;

/// Relative eigenvalue gap below which two eigenvalues count as degenerate.
inline constexpr double kDegeneracyGap = 1e-8;

/// Raised when a numerical precondition (Hermiticity, positivity,
/// non-degeneracy) fails.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionProfile {
 public:
  DimensionProfile() = default;
  explicit DimensionProfile(std::vector<std::size_t> dims);
  DimensionProfile(std::initializer_list<std::size_t> dims)
      : DimensionProfile(std::vector<std::size_t>(dims)) {}

  [[nodiscard]] const std::vector<std::size_t>& dims() const { return dims_; }
  [[nodiscard]] std::size_t parts() const { return dims_.size(); }
  [[nodiscard]] std::size_t dim(std::size_t part) const;
  [[nodiscard]] std::size_t total() const { return total_; }

  /// Distance in the flat index between consecutive values of `part`'s digit.
  [[nodiscard]] std::size_t stride(std::size_t part) const;
  [[nodiscard]] std::size_t digit(std::size_t flat, std::size_t part) const {
    return (flat / strides_[part]) % dims_[part];
  }

  [[nodiscard]] bool all_qubits() const;
  [[nodiscard]] DimensionProfile restricted(std::span<const std::size_t> parts) const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const DimensionProfile&, const DimensionProfile&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

/// Hermitian, unit-trace operator on a product space.
class DensityOperator {
 public:
  /// Checks shape, Hermiticity and trace. Positivity is only checked by
  /// `validated`, which is meant for user-supplied input.
  DensityOperator(CMatrix matrix, DimensionProfile profile);

  static DensityOperator validated(CMatrix matrix, DimensionProfile profile);

  [[nodiscard]] const CMatrix& matrix() const { return matrix_; }
  [[nodiscard]] const DimensionProfile& profile() const { return profile_; }

  /// tr(rho^2)
  [[nodiscard]] double purity() const;

 private:
  CMatrix matrix_;
  DimensionProfile profile_;
};

class PureState {
 public:
  PureState(CVector amplitudes, DimensionProfile profile);

  [[nodiscard]] const CVector& amplitudes() const { return amplitudes_; }
  [[nodiscard]] const DimensionProfile& profile() const { return profile_; }
  [[nodiscard]] Complex amplitude(std::span<const std::size_t> digits) const;

  [[nodiscard]] DensityOperator density() const;

 private:
  CVector amplitudes_;
  DimensionProfile profile_;
};

/// Orthonormal basis {U|k>} of one subsystem; columns of `vectors`.
class MeasurementBasis {
 public:
  MeasurementBasis(std::size_t part, CMatrix vectors);

  [[nodiscard]] std::size_t part() const { return part_; }
  [[nodiscard]] const CMatrix& vectors() const { return vectors_; }
  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(vectors_.cols()); }

 private:
  std::size_t part_;
  CMatrix vectors_;
};

struct EigenSystem {
  RVector values;   // non-increasing
  CMatrix vectors;  // columns, matching `values`
};

[[nodiscard]] CMatrix kron(const CMatrix& a, const CMatrix& b);

/// I (x) ... (x) op (x) ... (x) I with `op` acting on `part`.
[[nodiscard]] CMatrix embed(const CMatrix& op, std::size_t part, const DimensionProfile& profile);

/// Reduced state of one subsystem, tr over all other parts.
[[nodiscard]] CMatrix partial_trace(const DensityOperator& rho, std::size_t keep);

/// Reduced state of the listed subsystems (strictly increasing).
[[nodiscard]] DensityOperator partial_trace(const DensityOperator& rho,
                                            std::span<const std::size_t> keep);

/// Eigenvalues sorted non-increasing. Within a degenerate cluster the order
/// follows the position of each eigenvector's leading component, and every
/// eigenvector is phased so that its leading component is real positive.
[[nodiscard]] EigenSystem hermitian_eig(const CMatrix& m);

[[nodiscard]] DensityOperator apply_measurement(const DensityOperator& rho,
                                                const MeasurementBasis& basis);

/// Re tr(a^dagger b)
[[nodiscard]] double hs_inner(const CMatrix& a, const CMatrix& b);

/// (I (x) U^dagger (x) I) m (I (x) U (x) I) for a local unitary U on `part`.
[[nodiscard]] CMatrix rotate_local(const CMatrix& m, const CMatrix& u, std::size_t part,
                                   const DimensionProfile& profile);

/// Hilbert-Schmidt norm^2 of the Pi^(l)-dephased part of `m`, given the
/// measurement basis as columns of `u`. Equals ||Pi(m)||^2.
[[nodiscard]] double dephased_norm_sq(const CMatrix& m, const CMatrix& u, std::size_t part,
                                      const DimensionProfile& profile);

[[nodiscard]] bool is_hermitian(const CMatrix& m, double tol = kConstructionTol);

/// Groups a non-increasing spectrum into runs whose consecutive gaps are
/// below kDegeneracyGap * max(1, spectral range). Returns run lengths.
[[nodiscard]] std::vector<std::size_t> degeneracy_clusters(const RVector& values);

}  // namespace minlab
