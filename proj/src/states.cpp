#include "minlab/states.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "minlab/rng.hpp"

namespace minlab {

namespace {

const DimensionProfile& three_qubits() {
  static const DimensionProfile p{2, 2, 2};
  return p;
}

// Equal-weight superposition of the listed 3-qubit labels, e.g. "001".
PureState superposition(std::initializer_list<std::pair<const char*, double>> terms) {
  CVector amps = CVector::Zero(8);
  double norm = 0.0;
  for (const auto& [label, sign] : terms) {
    amps(std::stoi(label, nullptr, 2)) += sign;
    norm += 1.0;
  }
  amps /= std::sqrt(norm);
  return PureState(std::move(amps), three_qubits());
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::GhzW:
      return "ghz-w";
    case Family::WtW:
      return "wt-w";
    case Family::GhzGhzMinus:
      return "ghz-ghzminus";
    case Family::GhzGhz1:
      return "ghz-ghz1";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::GhzW, Family::WtW, Family::GhzGhzMinus, Family::GhzGhz1}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

PureState ghz(std::size_t n) {
  if (n < 2) throw std::invalid_argument("GHZ state needs at least two qubits");
  if (n > 12) throw std::invalid_argument("GHZ state larger than 12 qubits is out of range");
  DimensionProfile prof(std::vector<std::size_t>(n, 2));
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(prof.total()));
  amps(0) = 1.0 / std::sqrt(2.0);
  amps(amps.size() - 1) = 1.0 / std::sqrt(2.0);
  return PureState(std::move(amps), std::move(prof));
}

PureState w3() { return superposition({{"001", 1.0}, {"010", 1.0}, {"100", 1.0}}); }

PureState w3_flipped() { return superposition({{"110", 1.0}, {"101", 1.0}, {"011", 1.0}}); }

PureState ghz_minus() { return superposition({{"000", 1.0}, {"111", -1.0}}); }

PureState ghz_1() { return superposition({{"001", 1.0}, {"110", 1.0}}); }

PureState bell() {
  CVector amps = CVector::Zero(4);
  amps(0) = amps(3) = 1.0 / std::sqrt(2.0);
  return PureState(std::move(amps), DimensionProfile{2, 2});
}

PureState basis_state(const DimensionProfile& profile, std::span<const std::size_t> digits) {
  if (digits.size() != profile.parts()) throw std::invalid_argument("wrong number of digits");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] >= profile.dim(k)) throw std::out_of_range("digit out of range");
    flat += digits[k] * profile.stride(k);
  }
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(profile.total()));
  amps(static_cast<Eigen::Index>(flat)) = 1.0;
  return PureState(std::move(amps), profile);
}

DensityOperator family(const FamilySpec& spec) {
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw std::invalid_argument("mixing weight p must lie in [0, 1]");
  const auto pair = [&]() -> std::array<PureState, 2> {
    switch (spec.family) {
      case Family::GhzW:
        return {ghz(3), w3()};
      case Family::WtW:
        return {w3_flipped(), w3()};
      case Family::GhzGhzMinus:
        return {ghz(3), ghz_minus()};
      case Family::GhzGhz1:
        return {ghz(3), ghz_1()};
    }
    throw std::invalid_argument("unknown family");
  }();
  const CVector& a = pair[0].amplitudes();
  const CVector& b = pair[1].amplitudes();
  CMatrix m = spec.p * (a * a.adjoint()) + (1.0 - spec.p) * (b * b.adjoint());
  return DensityOperator(std::move(m), three_qubits());
}

PureState haar_pure(const DimensionProfile& profile, std::uint64_t seed) {
  Rng rng(seed);
  CVector amps(static_cast<Eigen::Index>(profile.total()));
  for (Eigen::Index i = 0; i < amps.size(); ++i) amps(i) = rng.complex_normal();
  amps.normalize();
  return PureState(std::move(amps), profile);
}

DensityOperator random_mixed(const DimensionProfile& profile, std::size_t rank, std::uint64_t seed) {
  if (rank < 1 || rank > profile.total()) throw std::invalid_argument("rank must lie in [1, total dimension]");
  Rng rng(seed);
  // Flat Dirichlet: normalized Exp(1) draws.
  std::vector<double> w(rank);
  double sum = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - rng.uniform());
    sum += x;
  }
  const auto n = static_cast<Eigen::Index>(profile.total());
  CMatrix m = CMatrix::Zero(n, n);
  for (std::size_t r = 0; r < rank; ++r) {
    const PureState psi = haar_pure(profile, rng.next_u64());
    m += (w[r] / sum) * (psi.amplitudes() * psi.amplitudes().adjoint());
  }
  m = 0.5 * (m + m.adjoint());
  return DensityOperator(std::move(m), profile);
}

CMatrix random_local_unitary(const DimensionProfile& profile, std::uint64_t seed) {
  CMatrix u = CMatrix::Identity(1, 1);
  for (std::size_t k = 0; k < profile.parts(); ++k) {
    Rng rng = Rng::stream(seed, k);
    u = kron(u, haar_unitary(profile.dim(k), rng));
  }
  return u;
}

}  // namespace minlab
