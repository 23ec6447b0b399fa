#include "minlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace minlab {

std::string_view to_string(EqualityCase c) {
  switch (c) {
    case EqualityCase::CaseI:
      return "CaseI";
    case EqualityCase::CaseII:
      return "CaseII";
    case EqualityCase::NotApplicable:
      break;
  }
  return "NotApplicable";
}

namespace {

double marginal_purity(const PureState& psi, std::size_t part) {
  const CMatrix r = partial_trace(psi.density(), part);
  return hs_inner(r, r);
}

double normalization(std::size_t d) { return static_cast<double>(d) / static_cast<double>(d - 1); }

// G_ab = sum over all other axes of t[..a..] t[..b..]
RMatrix axis_gram(const RealTensor& t, std::size_t axis) {
  std::size_t outer = 1, inner = 1;
  for (std::size_t a = 0; a < axis; ++a) outer *= t.shape[a];
  for (std::size_t a = axis + 1; a < t.shape.size(); ++a) inner *= t.shape[a];
  const std::size_t n = t.shape[axis];

  RMatrix g = RMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t o = 0; o < outer; ++o) {
    const double* block = t.data.data() + o * n * inner;
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> slab(
        block, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(inner));
    g.noalias() += slab * slab.transpose();
  }
  return g;
}

void require_qubit(const DimensionProfile& prof, std::size_t part) {
  if (prof.dim(part) != 2) throw std::invalid_argument("measured subsystem must be a qubit");
}

double rayleigh(const RMatrix& k, const RVector& v) { return v.dot(k * v) / v.squaredNorm(); }

// Orthonormal basis of the complement of unit vector `u`, as columns.
RMatrix orthogonal_complement(const RVector& u) {
  const auto n = u.size();
  RMatrix full = RMatrix::Identity(n, n);
  full.col(0) = u;
  Eigen::HouseholderQR<RMatrix> qr(full);
  const RMatrix q = qr.householderQ() * RMatrix::Identity(n, n);
  return q.rightCols(n - 1);
}

}  // namespace

double min_pure(const PureState& psi, std::size_t part) {
  const std::size_t d = psi.profile().dim(part);
  return normalization(d) * (1.0 - marginal_purity(psi, part));
}

double discord_pure(const PureState& psi, std::size_t part) { return min_pure(psi, part); }

double concurrence_pure_bipartite(const PureState& psi) {
  if (psi.profile().parts() != 2) throw std::invalid_argument("concurrence needs a bipartite state");
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - marginal_purity(psi, 0))));
}

double meyer_wallach(const PureState& psi) {
  const std::size_t n = psi.profile().parts();
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += 2.0 * (1.0 - marginal_purity(psi, k));
  return acc / static_cast<double>(n);
}

RVector symmetric_eigenvalues(const RMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

KMatrix k_matrix(const BlochData& bloch, std::size_t part) {
  const auto& prof = bloch.profile();
  const std::size_t dl = prof.dim(part);
  const auto m = static_cast<Eigen::Index>(dl * dl - 1);

  KMatrix k{part, dl, RMatrix::Zero(m, m)};
  for (const auto& [subset, tensor] : bloch.tensors()) {
    const auto pos = std::find(subset.begin(), subset.end(), part);
    if (pos == subset.end()) continue;
    double weight = 1.0;
    for (auto s : subset) weight *= static_cast<double>(prof.dim(s)) / 2.0;
    k.entries += weight * axis_gram(tensor, static_cast<std::size_t>(pos - subset.begin()));
  }
  k.entries = 0.5 * (k.entries + k.entries.transpose());
  return k;
}

double min_bound(const KMatrix& k) {
  const RVector eta = symmetric_eigenvalues(k.entries);
  const std::size_t count = std::min<std::size_t>(k.dim * k.dim - k.dim, static_cast<std::size_t>(eta.size()));
  return eta.head(static_cast<Eigen::Index>(count)).sum();
}

IsometryRows isometry_rows(const MeasurementBasis& basis) {
  const OperatorBasis gens = generators(basis.dim());
  const auto d = static_cast<Eigen::Index>(basis.dim());
  IsometryRows a{basis.part(), RMatrix(d, static_cast<Eigen::Index>(gens.generators.size()))};
  for (Eigen::Index j = 0; j < d; ++j) {
    const CVector v = basis.vectors().col(j);
    for (std::size_t i = 0; i < gens.generators.size(); ++i) {
      const Complex e = v.dot(gens.generators[i] * v);
      a.rows(j, static_cast<Eigen::Index>(i)) = e.real() / std::sqrt(2.0);
    }
  }
  return a;
}

double min_qubit_term(const BlochData& bloch, std::size_t part) {
  require_qubit(bloch.profile(), part);
  const KMatrix k = k_matrix(bloch, part);
  const RVector& s = bloch.coherent(part);
  const double trace = k.entries.trace();
  if (s.norm() > kCoherentZeroTol) return trace - rayleigh(k.entries, s);
  return trace - symmetric_eigenvalues(k.entries).minCoeff();
}

double min_qubit(const DensityOperator& rho, std::size_t part) {
  const auto& prof = rho.profile();
  require_qubit(prof, part);
  const BlochData bloch = bloch_decompose(rho);
  const double prefactor = 2.0 / static_cast<double>(prof.total());
  return prefactor * min_qubit_term(bloch, part);
}

double min_general_nondegenerate(const DensityOperator& rho, std::size_t part) {
  const auto& prof = rho.profile();
  const std::size_t d = prof.dim(part);
  const EigenSystem eig = hermitian_eig(partial_trace(rho, part));
  if (degeneracy_clusters(eig.values).size() != d) {
    throw DegenerateMarginal("reduced state has a degenerate spectrum");
  }
  const IsometryRows a = isometry_rows(MeasurementBasis(part, eig.vectors));
  const KMatrix k = k_matrix(bloch_decompose(rho), part);
  const double term = k.entries.trace() - (a.rows * k.entries * a.rows.transpose()).trace();
  return normalization(d) / static_cast<double>(prof.total()) * term;
}

GMatrix g_matrix(const BlochData& bloch, std::size_t part) {
  require_qubit(bloch.profile(), part);
  const RVector& s = bloch.coherent(part);
  return {part, s * s.transpose() + k_matrix(bloch, part).entries};
}

double discord_qubit(const DensityOperator& rho, std::size_t part) {
  const auto& prof = rho.profile();
  if (!prof.all_qubits()) throw std::invalid_argument("qubit discord formula needs an all-qubit system");
  const BlochData bloch = bloch_decompose(rho);
  const RVector& s = bloch.coherent(part);
  const KMatrix k = k_matrix(bloch, part);
  const GMatrix g = g_matrix(bloch, part);
  const double lambda_max = symmetric_eigenvalues(g.entries)(0);
  const double prefactor = 1.0 / static_cast<double>(prof.total() / 2);
  return prefactor * (s.squaredNorm() + k.entries.trace() - lambda_max);
}

double case_one_margin(const BlochData& bloch, std::size_t part) {
  require_qubit(bloch.profile(), part);
  const RVector& s = bloch.coherent(part);
  const double norm = s.norm();
  if (norm <= kCoherentZeroTol) throw std::invalid_argument("ordering margin needs a non-zero coherent vector");
  const RVector unit = s / norm;
  const RMatrix k = k_matrix(bloch, part).entries;
  const RMatrix q = orthogonal_complement(unit);
  const RVector others = symmetric_eigenvalues(q.transpose() * k * q);
  return s.squaredNorm() + rayleigh(k, unit) - others(0);
}

EqualityVerdict equality_verdict(const BlochData& bloch, std::size_t part) {
  require_qubit(bloch.profile(), part);
  const RVector& s = bloch.coherent(part);
  const RMatrix k = k_matrix(bloch, part).entries;
  const double scale = std::max(1.0, k.norm());

  EqualityVerdict v;
  const RMatrix ss = s * s.transpose();
  v.commutator_norm = (ss * k - k * ss).norm();
  const RVector eta = symmetric_eigenvalues(k);
  v.triply_degenerate = (eta(0) - eta(eta.size() - 1)) < 1e-8 * scale;

  if (s.norm() > kCoherentZeroTol) {
    v.equality_case = EqualityCase::CaseI;
    const RVector unit = s.normalized();
    const double eta_s = rayleigh(k, unit);
    const bool aligned = (k * unit - eta_s * unit).norm() < 1e-8 * scale;
    v.eigen_condition = aligned && case_one_margin(bloch, part) >= -1e-10 * scale;
    v.predicted_equal = v.eigen_condition;
  } else {
    v.equality_case = EqualityCase::CaseII;
    v.predicted_equal = v.triply_degenerate;
  }
  return v;
}

}  // namespace minlab
