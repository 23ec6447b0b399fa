#include "minlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "minlab/rng.hpp"

namespace minlab {

void SearchConfig::validate() const {
  if (grid_points < 1) throw std::invalid_argument("grid_points must be >= 1");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (refine_iters < 1) throw std::invalid_argument("refine_iters must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
}

double distance_sq(const DensityOperator& rho, const MeasurementBasis& basis) {
  const DensityOperator post = apply_measurement(rho, basis);
  const double v = hs_inner(rho.matrix(), rho.matrix()) - 2.0 * hs_inner(rho.matrix(), post.matrix()) +
                   hs_inner(post.matrix(), post.matrix());
  return std::max(0.0, v);
}

bool marginal_invariant(const DensityOperator& rho, const MeasurementBasis& basis, double tol) {
  const CMatrix marginal = partial_trace(rho, basis.part());
  const CMatrix& u = basis.vectors();
  if (u.rows() != marginal.rows()) throw std::invalid_argument("basis dimension does not match subsystem");
  const CVector weights = (u.adjoint() * marginal * u).diagonal();
  const CMatrix back = u * weights.asDiagonal() * u.adjoint();
  return (back - marginal).cwiseAbs().maxCoeff() <= tol;
}

std::vector<Eigen::Vector3d> fibonacci_sphere(int count) {
  if (count < 1) throw std::invalid_argument("sphere grid needs at least one point");
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

CMatrix qubit_basis(const Eigen::Vector3d& axis) {
  const Eigen::Vector3d n = axis.normalized();
  const double theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
  const double phi = std::atan2(n.y(), n.x());
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  CMatrix u(2, 2);
  u(0, 0) = c;
  u(1, 0) = e * s;
  u(0, 1) = -std::conj(e) * s;
  u(1, 1) = c;
  return u;
}

namespace {

constexpr double kMinStep = 1e-9;
constexpr long kMaxIterations = 20000;

// Maximizes sign * ||rho - Pi(rho)||^2 over bases of the form
// frame * blockdiag(V_1, ..., V_c) where each V_i is unitary on its block.
class BasisSearch {
 public:
  BasisSearch(const DensityOperator& rho, std::size_t part, double sign, const SearchConfig& cfg,
              const BasisObserver& observer)
      : rho_(rho), part_(part), sign_(sign), cfg_(cfg), observer_(observer),
        norm_sq_(hs_inner(rho.matrix(), rho.matrix())),
        factor_(static_cast<double>(rho.profile().dim(part)) /
                static_cast<double>(rho.profile().dim(part) - 1)) {}

  OracleResult run(const CMatrix& frame, const std::vector<std::size_t>& blocks) {
    cfg_.validate();
    const bool trivial = std::all_of(blocks.begin(), blocks.end(), [](std::size_t b) { return b == 1; });
    if (trivial) {
      const double v = score(frame);
      return finish(frame, v, v, true);
    }
    if (frame.rows() == 2) return run_sphere(frame);
    return run_blocks(frame, blocks);
  }

 private:
  // sign * distance^2
  double score(const CMatrix& basis) {
    ++evaluations_;
    if (observer_) observer_(MeasurementBasis(part_, basis));
    const double dist = norm_sq_ - dephased_norm_sq(rho_.matrix(), basis, part_, rho_.profile());
    return sign_ * std::max(0.0, dist);
  }

  OracleResult finish(const CMatrix& basis, double best, double coarse, bool converged) const {
    OracleResult r{MeasurementBasis(part_, basis)};
    r.value = factor_ * sign_ * best;
    r.coarse_value = factor_ * sign_ * coarse;
    r.evaluations = evaluations_;
    r.converged = converged;
    return r;
  }

  // Qubit: the basis is fixed by one Bloch-sphere axis.
  OracleResult run_sphere(const CMatrix& frame) {
    const auto grid = fibonacci_sphere(cfg_.grid_points);
    std::vector<double> values;
    values.reserve(grid.size());
    for (const auto& axis : grid) values.push_back(score(frame * qubit_basis(axis)));

    std::vector<std::size_t> order(grid.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    const double coarse = values[order[0]];

    const double initial_step = std::min(0.5, std::sqrt(4.0 * std::numbers::pi / cfg_.grid_points));
    double best = coarse;
    Eigen::Vector3d best_axis = grid[order[0]];
    bool all_converged = true;
    const std::size_t starts = std::min<std::size_t>(static_cast<std::size_t>(cfg_.restarts), grid.size());
    for (std::size_t r = 0; r < starts; ++r) {
      Eigen::Vector3d axis = grid[order[r]];
      double value = values[order[r]];
      const bool ok = refine_sphere(frame, axis, value, initial_step);
      all_converged = all_converged && ok;
      if (value > best) {
        best = value;
        best_axis = axis;
      }
    }
    return finish(frame * qubit_basis(best_axis), best, coarse, all_converged);
  }

  bool refine_sphere(const CMatrix& frame, Eigen::Vector3d& axis, double& value, double step) {
    int stall = 0;
    for (long it = 0; it < kMaxIterations; ++it) {
      if (step < kMinStep || stall >= cfg_.refine_iters) return true;
      const Eigen::Vector3d helper = std::abs(axis.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
      const Eigen::Vector3d t1 = (helper - helper.dot(axis) * axis).normalized();
      const Eigen::Vector3d t2 = axis.cross(t1);
      double cand_value = value;
      Eigen::Vector3d cand_axis = axis;
      for (const Eigen::Vector3d& t : {t1, Eigen::Vector3d(-t1), t2, Eigen::Vector3d(-t2)}) {
        const Eigen::Vector3d trial = (std::cos(step) * axis + std::sin(step) * t).normalized();
        const double v = score(frame * qubit_basis(trial));
        if (v > cand_value) {
          cand_value = v;
          cand_axis = trial;
        }
      }
      if (cand_value > value) {
        stall = (cand_value - value < cfg_.tol) ? stall + 1 : 0;
        value = cand_value;
        axis = cand_axis;
      } else {
        step *= 0.5;
      }
    }
    return false;
  }

  // General blocks: Haar sampling per block, then coordinate search along
  // complex Givens rotations between columns of the same block.
  OracleResult run_blocks(const CMatrix& frame, const std::vector<std::size_t>& blocks) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
    std::size_t offset = 0;
    for (auto size : blocks) {
      for (std::size_t j = 0; j < size; ++j) {
        for (std::size_t k = j + 1; k < size; ++k) {
          pairs.emplace_back(static_cast<Eigen::Index>(offset + j), static_cast<Eigen::Index>(offset + k));
        }
      }
      offset += size;
    }

    double best = -std::numeric_limits<double>::infinity();
    double coarse_best = best;
    CMatrix best_basis = frame;
    bool all_converged = true;
    for (int r = 0; r < cfg_.restarts; ++r) {
      Rng rng = Rng::stream(cfg_.seed, static_cast<std::uint64_t>(r));
      CMatrix start = frame;
      double start_value = -std::numeric_limits<double>::infinity();
      for (int g = 0; g < cfg_.grid_points; ++g) {
        CMatrix cand = frame * random_block_unitary(blocks, rng);
        const double v = score(cand);
        if (v > start_value) {
          start_value = v;
          start = std::move(cand);
        }
      }
      coarse_best = std::max(coarse_best, start_value);
      const bool ok = refine_blocks(start, start_value, pairs);
      all_converged = all_converged && ok;
      if (start_value > best) {
        best = start_value;
        best_basis = start;
      }
    }
    return finish(best_basis, best, coarse_best, all_converged);
  }

  static CMatrix random_block_unitary(const std::vector<std::size_t>& blocks, Rng& rng) {
    std::size_t d = std::accumulate(blocks.begin(), blocks.end(), std::size_t{0});
    CMatrix v = CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    std::size_t offset = 0;
    for (auto size : blocks) {
      if (size > 1) {
        v.block(static_cast<Eigen::Index>(offset), static_cast<Eigen::Index>(offset),
                static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size)) = haar_unitary(size, rng);
      }
      offset += size;
    }
    return v;
  }

  // Right-multiplies columns (j, k) by exp(i h X) (imaginary=true) or by
  // exp(i h Y) (imaginary=false) restricted to that plane.
  static void rotate_columns(CMatrix& basis, Eigen::Index j, Eigen::Index k, double h, bool imaginary) {
    const double c = std::cos(h);
    const double s = std::sin(h);
    const CVector a = basis.col(j);
    const CVector b = basis.col(k);
    if (imaginary) {
      const Complex is(0.0, s);
      basis.col(j) = c * a + is * b;
      basis.col(k) = is * a + c * b;
    } else {
      basis.col(j) = c * a - s * b;
      basis.col(k) = s * a + c * b;
    }
  }

  bool refine_blocks(CMatrix& basis, double& value,
                     const std::vector<std::pair<Eigen::Index, Eigen::Index>>& pairs) {
    double step = 0.5;
    int stall = 0;
    for (long sweep = 0; sweep < kMaxIterations; ++sweep) {
      if (step < kMinStep || stall >= cfg_.refine_iters) return true;
      const double before = value;
      for (const auto& [j, k] : pairs) {
        for (bool imaginary : {false, true}) {
          for (double h : {step, -step}) {
            CMatrix trial = basis;
            rotate_columns(trial, j, k, h, imaginary);
            const double v = score(trial);
            if (v > value) {
              value = v;
              basis = std::move(trial);
              break;
            }
          }
        }
      }
      if (value > before) {
        stall = (value - before < cfg_.tol) ? stall + 1 : 0;
      } else {
        step *= 0.5;
      }
    }
    return false;
  }

  const DensityOperator& rho_;
  std::size_t part_;
  double sign_;
  SearchConfig cfg_;
  const BasisObserver& observer_;
  double norm_sq_;
  double factor_;
  long evaluations_ = 0;
};

}  // namespace

OracleResult min_direct(const DensityOperator& rho, std::size_t part, const SearchConfig& cfg,
                        const BasisObserver& observer) {
  const EigenSystem eig = hermitian_eig(partial_trace(rho, part));
  const std::vector<std::size_t> blocks = degeneracy_clusters(eig.values);
  BasisSearch search(rho, part, 1.0, cfg, observer);
  return search.run(eig.vectors, blocks);
}

OracleResult discord_direct(const DensityOperator& rho, std::size_t part, const SearchConfig& cfg) {
  const std::size_t d = rho.profile().dim(part);
  const auto n = static_cast<Eigen::Index>(d);
  const BasisObserver none;
  BasisSearch search(rho, part, -1.0, cfg, none);
  return search.run(CMatrix::Identity(n, n), {d});
}

}  // namespace minlab
