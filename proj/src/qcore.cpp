#include "minlab/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace minlab {

DimensionProfile::DimensionProfile(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("dimension profile needs at least one part");
  for (auto d : dims_) {
    if (d < 2) throw std::invalid_argument("local dimensions must be >= 2");
  }
  strides_.assign(dims_.size(), 1);
  for (std::size_t k = dims_.size(); k-- > 1;) strides_[k - 1] = strides_[k] * dims_[k];
  total_ = strides_[0] * dims_[0];
}

std::size_t DimensionProfile::dim(std::size_t part) const {
  if (part >= dims_.size()) throw std::out_of_range("subsystem index out of range");
  return dims_[part];
}

std::size_t DimensionProfile::stride(std::size_t part) const {
  if (part >= dims_.size()) throw std::out_of_range("subsystem index out of range");
  return strides_[part];
}

bool DimensionProfile::all_qubits() const {
  return std::all_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 2; });
}

DimensionProfile DimensionProfile::restricted(std::span<const std::size_t> parts) const {
  std::vector<std::size_t> sub;
  sub.reserve(parts.size());
  for (auto p : parts) sub.push_back(dim(p));
  return DimensionProfile(std::move(sub));
}

std::string DimensionProfile::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < dims_.size(); ++k) os << (k ? "x" : "") << dims_[k];
  return os.str();
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

DensityOperator::DensityOperator(CMatrix matrix, DimensionProfile profile)
    : matrix_(std::move(matrix)), profile_(std::move(profile)) {
  const auto n = static_cast<Eigen::Index>(profile_.total());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw std::invalid_argument("density matrix shape does not match profile " +
                                profile_.to_string());
  }
  if (!is_hermitian(matrix_)) throw NumericalError("density matrix is not Hermitian");
  if (std::abs(matrix_.trace() - Complex(1.0)) > kConstructionTol) {
    throw NumericalError("density matrix trace differs from 1");
  }
}

DensityOperator DensityOperator::validated(CMatrix matrix, DimensionProfile profile) {
  DensityOperator rho(std::move(matrix), std::move(profile));
  const auto eig = hermitian_eig(rho.matrix());
  if (eig.values(eig.values.size() - 1) < -kConstructionTol) {
    throw NumericalError("density matrix has a negative eigenvalue");
  }
  return rho;
}

double DensityOperator::purity() const { return hs_inner(matrix_, matrix_); }

PureState::PureState(CVector amplitudes, DimensionProfile profile)
    : amplitudes_(std::move(amplitudes)), profile_(std::move(profile)) {
  if (amplitudes_.size() != static_cast<Eigen::Index>(profile_.total())) {
    throw std::invalid_argument("amplitude count does not match profile " + profile_.to_string());
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kConstructionTol) {
    throw NumericalError("pure state is not normalized");
  }
}

Complex PureState::amplitude(std::span<const std::size_t> digits) const {
  if (digits.size() != profile_.parts()) throw std::invalid_argument("wrong number of digits");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] >= profile_.dim(k)) throw std::out_of_range("digit out of range");
    flat += digits[k] * profile_.stride(k);
  }
  return amplitudes_(static_cast<Eigen::Index>(flat));
}

DensityOperator PureState::density() const {
  return DensityOperator(amplitudes_ * amplitudes_.adjoint(), profile_);
}

MeasurementBasis::MeasurementBasis(std::size_t part, CMatrix vectors)
    : part_(part), vectors_(std::move(vectors)) {
  if (vectors_.rows() != vectors_.cols() || vectors_.rows() < 2) {
    throw std::invalid_argument("measurement basis must be a square matrix of size >= 2");
  }
  const CMatrix gram = vectors_.adjoint() * vectors_;
  const CMatrix id = CMatrix::Identity(vectors_.rows(), vectors_.cols());
  if ((gram - id).cwiseAbs().maxCoeff() > kConstructionTol) {
    throw NumericalError("measurement basis vectors are not orthonormal");
  }
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix embed(const CMatrix& op, std::size_t part, const DimensionProfile& profile) {
  if (op.rows() != static_cast<Eigen::Index>(profile.dim(part)) || op.rows() != op.cols()) {
    throw std::invalid_argument("operator size does not match subsystem dimension");
  }
  const auto before = static_cast<Eigen::Index>(profile.total() / (profile.stride(part) * profile.dim(part)));
  const auto after = static_cast<Eigen::Index>(profile.stride(part));
  return kron(kron(CMatrix::Identity(before, before), op), CMatrix::Identity(after, after));
}

CMatrix partial_trace(const DensityOperator& rho, std::size_t keep) {
  const auto& prof = rho.profile();
  const std::size_t d = prof.dim(keep);
  const std::size_t stride = prof.stride(keep);
  const CMatrix& m = rho.matrix();
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t base = 0; base < prof.total(); ++base) {
    if (prof.digit(base, keep) != 0) continue;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
            m(static_cast<Eigen::Index>(base + a * stride), static_cast<Eigen::Index>(base + b * stride));
      }
    }
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> keep) {
  const auto& prof = rho.profile();
  if (keep.empty()) throw std::invalid_argument("partial trace must keep at least one part");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= prof.parts()) throw std::out_of_range("subsystem index out of range");
    if (i > 0 && keep[i] <= keep[i - 1]) {
      throw std::invalid_argument("kept subsystems must be strictly increasing");
    }
  }
  const DimensionProfile sub = prof.restricted(keep);

  std::vector<bool> kept(prof.parts(), false);
  for (auto k : keep) kept[k] = true;

  // Split every flat index into (kept digits, traced digits).
  const std::size_t n = prof.total();
  std::vector<std::size_t> kept_index(n), traced_index(n);
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::size_t ki = 0, ti = 0;
    for (std::size_t p = 0; p < prof.parts(); ++p) {
      const std::size_t dgt = prof.digit(flat, p);
      if (kept[p]) {
        ki = ki * prof.dim(p) + dgt;
      } else {
        ti = ti * prof.dim(p) + dgt;
      }
    }
    kept_index[flat] = ki;
    traced_index[flat] = ti;
  }

  const std::size_t traced_total = n / sub.total();
  std::vector<std::vector<std::size_t>> groups(traced_total);
  for (std::size_t flat = 0; flat < n; ++flat) groups[traced_index[flat]].push_back(flat);

  const auto sd = static_cast<Eigen::Index>(sub.total());
  CMatrix out = CMatrix::Zero(sd, sd);
  const CMatrix& m = rho.matrix();
  for (const auto& g : groups) {
    for (auto i : g) {
      for (auto j : g) {
        out(static_cast<Eigen::Index>(kept_index[i]), static_cast<Eigen::Index>(kept_index[j])) +=
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  return DensityOperator(std::move(out), sub);
}

namespace {

Eigen::Index leading_component(const CVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-6) return i;
  }
  return 0;
}

}  // namespace

std::vector<std::size_t> degeneracy_clusters(const RVector& values) {
  std::vector<std::size_t> sizes;
  if (values.size() == 0) return sizes;
  const double range = values(0) - values(values.size() - 1);
  const double gap = kDegeneracyGap * std::max(1.0, std::abs(range));
  sizes.push_back(1);
  for (Eigen::Index i = 1; i < values.size(); ++i) {
    if (values(i - 1) - values(i) < gap) {
      ++sizes.back();
    } else {
      sizes.push_back(1);
    }
  }
  return sizes;
}

EigenSystem hermitian_eig(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigendecomposition needs a square matrix");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (!is_hermitian(m, kConstructionTol * scale)) {
    throw NumericalError("matrix is not Hermitian");
  }
  const CMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed to converge");

  const Eigen::Index n = m.rows();
  CMatrix vecs = solver.eigenvectors();
  for (Eigen::Index c = 0; c < n; ++c) {
    const Eigen::Index lead = leading_component(vecs.col(c));
    const Complex z = vecs(lead, c);
    vecs.col(c) *= std::conj(z) / std::abs(z);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const RVector& raw = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return raw(a) > raw(b); });

  EigenSystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out.values(i) = raw(order[static_cast<std::size_t>(i)]);

  // Within a degenerate cluster, order by leading component position.
  std::size_t start = 0;
  for (auto size : degeneracy_clusters(out.values)) {
    std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                     order.begin() + static_cast<std::ptrdiff_t>(start + size),
                     [&](Eigen::Index a, Eigen::Index b) {
                       return leading_component(vecs.col(a)) < leading_component(vecs.col(b));
                     });
    start += size;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    out.vectors.col(i) = vecs.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

CMatrix rotate_local(const CMatrix& m, const CMatrix& u, std::size_t part,
                     const DimensionProfile& profile) {
  const auto n = static_cast<Eigen::Index>(profile.total());
  const std::size_t d = profile.dim(part);
  if (m.rows() != n || m.cols() != n) throw std::invalid_argument("matrix does not match profile");
  if (u.rows() != static_cast<Eigen::Index>(d) || u.cols() != u.rows()) {
    throw std::invalid_argument("local unitary does not match subsystem dimension");
  }
  const auto stride = static_cast<Eigen::Index>(profile.stride(part));
  const auto dd = static_cast<Eigen::Index>(d);

  // right multiplication by I (x) U (x) I
  CMatrix tmp(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto dj = static_cast<Eigen::Index>(profile.digit(static_cast<std::size_t>(j), part));
    const Eigen::Index base = j - dj * stride;
    tmp.col(j).setZero();
    for (Eigen::Index k = 0; k < dd; ++k) tmp.col(j) += m.col(base + k * stride) * u(k, dj);
  }
  // left multiplication by I (x) U^dagger (x) I
  CMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto di = static_cast<Eigen::Index>(profile.digit(static_cast<std::size_t>(i), part));
    const Eigen::Index base = i - di * stride;
    out.row(i).setZero();
    for (Eigen::Index k = 0; k < dd; ++k) out.row(i) += std::conj(u(k, di)) * tmp.row(base + k * stride);
  }
  return out;
}

double dephased_norm_sq(const CMatrix& m, const CMatrix& u, std::size_t part,
                        const DimensionProfile& profile) {
  const CMatrix r = rotate_local(m, u, part, profile);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    const std::size_t di = profile.digit(static_cast<std::size_t>(i), part);
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      if (profile.digit(static_cast<std::size_t>(j), part) == di) acc += std::norm(r(i, j));
    }
  }
  return acc;
}

DensityOperator apply_measurement(const DensityOperator& rho, const MeasurementBasis& basis) {
  const auto& prof = rho.profile();
  if (basis.part() >= prof.parts()) throw std::out_of_range("subsystem index out of range");
  if (basis.dim() != prof.dim(basis.part())) {
    throw std::invalid_argument("basis dimension does not match subsystem dimension");
  }
  CMatrix r = rotate_local(rho.matrix(), basis.vectors(), basis.part(), prof);
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    const std::size_t di = prof.digit(static_cast<std::size_t>(i), basis.part());
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      if (prof.digit(static_cast<std::size_t>(j), basis.part()) != di) r(i, j) = 0.0;
    }
  }
  CMatrix back = rotate_local(r, basis.vectors().adjoint(), basis.part(), prof);
  back = 0.5 * (back + back.adjoint());
  return DensityOperator(std::move(back), prof);
}

double hs_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("Hilbert-Schmidt inner product of mismatched matrices");
  }
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

}  // namespace minlab
