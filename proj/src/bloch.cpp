#include "minlab/bloch.hpp"

#include <cmath>
#include <stdexcept>

namespace minlab {

OperatorBasis generators(std::size_t d) {
  if (d < 2) throw std::invalid_argument("generator basis needs dimension >= 2");
  const auto n = static_cast<Eigen::Index>(d);
  OperatorBasis basis;
  basis.dim = d;
  basis.generators.reserve(d * d - 1);

  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      CMatrix g = CMatrix::Zero(n, n);
      g(j, k) = 1.0;
      g(k, j) = 1.0;
      basis.generators.push_back(std::move(g));
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      CMatrix g = CMatrix::Zero(n, n);
      g(j, k) = Complex(0.0, -1.0);
      g(k, j) = Complex(0.0, 1.0);
      basis.generators.push_back(std::move(g));
    }
  }
  for (Eigen::Index l = 1; l < n; ++l) {
    CMatrix g = CMatrix::Zero(n, n);
    const double f = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    for (Eigen::Index j = 0; j < l; ++j) g(j, j) = f;
    g(l, l) = -static_cast<double>(l) * f;
    basis.generators.push_back(std::move(g));
  }
  return basis;
}

double RealTensor::norm_sq() const {
  double acc = 0.0;
  for (double v : data) acc += v * v;
  return acc;
}

double RealTensor::at(std::span<const std::size_t> index) const {
  if (index.size() != shape.size()) throw std::invalid_argument("tensor index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t a = 0; a < shape.size(); ++a) {
    if (index[a] >= shape[a]) throw std::out_of_range("tensor index out of range");
    flat = flat * shape[a] + index[a];
  }
  return data[flat];
}

const RVector& BlochData::coherent(std::size_t part) const {
  auto it = coherent_.find(part);
  if (it == coherent_.end()) throw std::out_of_range("no coherent vector for subsystem");
  return it->second;
}

void BlochData::set_coherent(std::size_t part, RVector s) { coherent_[part] = std::move(s); }

const RealTensor& BlochData::tensor(const Subset& subset) const {
  auto it = tensors_.find(subset);
  if (it == tensors_.end()) throw std::out_of_range("no correlation tensor for subset");
  return it->second;
}

void BlochData::set_tensor(Subset subset, RealTensor t) { tensors_[std::move(subset)] = std::move(t); }

std::vector<Subset> all_subsets(std::size_t n) {
  std::vector<Subset> out;
  for (std::size_t size = 1; size <= n; ++size) {
    // lexicographic combinations of `size` out of n
    Subset s(size);
    for (std::size_t i = 0; i < size; ++i) s[i] = i;
    while (true) {
      out.push_back(s);
      std::size_t i = size;
      while (i > 0 && s[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++s[i - 1];
      for (std::size_t j = i; j < size; ++j) s[j] = s[j - 1] + 1;
    }
  }
  return out;
}

namespace {

void check_subset(const Subset& subset, const DimensionProfile& prof) {
  if (subset.empty()) throw std::invalid_argument("subset must be non-empty");
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] >= prof.parts()) throw std::out_of_range("subset index out of range");
    if (i > 0 && subset[i] <= subset[i - 1]) {
      throw std::invalid_argument("subset must be strictly increasing");
    }
  }
}

// Steps a row-major multi-index; returns false after the last one.
bool next_index(std::vector<std::size_t>& idx, const std::vector<std::size_t>& shape) {
  for (std::size_t a = idx.size(); a-- > 0;) {
    if (++idx[a] < shape[a]) return true;
    idx[a] = 0;
  }
  return false;
}

CMatrix product_operator(const DimensionProfile& prof, const Subset& subset,
                         const std::vector<OperatorBasis>& bases,
                         const std::vector<std::size_t>& idx) {
  CMatrix op = CMatrix::Identity(1, 1);
  std::size_t pos = 0;
  for (std::size_t p = 0; p < prof.parts(); ++p) {
    const auto d = static_cast<Eigen::Index>(prof.dim(p));
    if (pos < subset.size() && subset[pos] == p) {
      op = kron(op, bases[pos].generators[idx[pos]]);
      ++pos;
    } else {
      op = kron(op, CMatrix::Identity(d, d));
    }
  }
  return op;
}

}  // namespace

RealTensor correlation_tensor(const DensityOperator& rho, const Subset& subset) {
  const auto& prof = rho.profile();
  check_subset(subset, prof);

  std::vector<OperatorBasis> bases;
  RealTensor t;
  for (auto k : subset) {
    bases.push_back(generators(prof.dim(k)));
    t.shape.push_back(prof.dim(k) * prof.dim(k) - 1);
  }
  std::size_t count = 1;
  for (auto s : t.shape) count *= s;
  t.data.reserve(count);

  const CMatrix& m = rho.matrix();
  std::vector<std::size_t> idx(subset.size(), 0);
  do {
    const CMatrix op = product_operator(prof, subset, bases, idx);
    // tr(rho op) = sum_ij rho_ij op_ji
    const Complex value = m.cwiseProduct(op.transpose()).sum();
    if (std::abs(value.imag()) > 1e-8) {
      throw NumericalError("correlation moment has a non-negligible imaginary part");
    }
    t.data.push_back(value.real());
  } while (next_index(idx, t.shape));
  return t;
}

BlochData bloch_decompose(const DensityOperator& rho) {
  const auto& prof = rho.profile();
  BlochData data(prof);
  for (auto& subset : all_subsets(prof.parts())) {
    RealTensor t = correlation_tensor(rho, subset);
    if (subset.size() == 1) {
      data.set_coherent(subset[0], Eigen::Map<const RVector>(t.data.data(),
                                                             static_cast<Eigen::Index>(t.size())));
    } else {
      data.set_tensor(std::move(subset), std::move(t));
    }
  }
  return data;
}

DensityOperator bloch_reconstruct(const BlochData& data, const DimensionProfile& profile) {
  const auto n = static_cast<Eigen::Index>(profile.total());
  CMatrix acc = CMatrix::Identity(n, n);

  for (const auto& subset : all_subsets(profile.parts())) {
    std::vector<OperatorBasis> bases;
    std::vector<std::size_t> shape;
    double weight = 1.0;
    for (auto k : subset) {
      bases.push_back(generators(profile.dim(k)));
      shape.push_back(profile.dim(k) * profile.dim(k) - 1);
      weight *= static_cast<double>(profile.dim(k)) / 2.0;
    }

    const double* values = nullptr;
    std::size_t expected = 1;
    for (auto s : shape) expected *= s;
    if (subset.size() == 1) {
      if (!data.has_coherent(subset[0])) throw std::invalid_argument("Bloch data is missing a coherent vector");
      const RVector& s = data.coherent(subset[0]);
      if (static_cast<std::size_t>(s.size()) != expected) throw std::invalid_argument("coherent vector has wrong length");
      values = s.data();
    } else {
      if (!data.has_tensor(subset)) throw std::invalid_argument("Bloch data is missing a correlation tensor");
      const RealTensor& t = data.tensor(subset);
      if (t.shape != shape) throw std::invalid_argument("correlation tensor has wrong shape");
      values = t.data.data();
    }

    std::vector<std::size_t> idx(subset.size(), 0);
    std::size_t flat = 0;
    do {
      const double v = values[flat++];
      if (v != 0.0) acc += (weight * v) * product_operator(profile, subset, bases, idx);
    } while (next_index(idx, shape));
  }
  acc /= static_cast<double>(profile.total());
  acc = 0.5 * (acc + acc.adjoint());
  return DensityOperator(std::move(acc), profile);
}

}  // namespace minlab
