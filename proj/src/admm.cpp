#include "ckmeans/admm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ckmeans/cg.hpp"
#include "ckmeans/kmeans.hpp"
#include "ckmeans/log.hpp"
#include "ckmeans/objective.hpp"
#include "ckmeans/rng.hpp"
#include "ckmeans/structured_ops.hpp"

namespace ckmeans {
namespace {

Shape shape_of(const DataMatrix& S, int k) {
  return Shape{static_cast<int>(S.cols()), k, static_cast<int>(S.rows())};
}

PairSelector first_of(const std::vector<std::pair<int, int>>& pairs) {
  return PairSelector{pairs, PairSelector::Side::first};
}

PairSelector second_of(const std::vector<std::pair<int, int>>& pairs) {
  return PairSelector{pairs, PairSelector::Side::second};
}

// The bilinear link terms pair the two endpoint selectors of a pair list.
// cross_first_to_second gathers each pair's first-endpoint block and
// scatters it onto the second endpoint (the gradient direction in the
// assignment); cross_second_to_first is its transpose (the gradient
// direction in the copy variable).
Vec cross_first_to_second(const std::vector<std::pair<int, int>>& pairs,
                          const Vec& v, const Shape& s) {
  if (pairs.empty()) return Vec();
  return select_adjoint(second_of(pairs), select(first_of(pairs), v, s), s);
}

Vec cross_second_to_first(const std::vector<std::pair<int, int>>& pairs,
                          const Vec& v, const Shape& s) {
  if (pairs.empty()) return Vec();
  return select_adjoint(first_of(pairs), select(second_of(pairs), v, s), s);
}

// Coupling residual x - Pw (elementwise) Cx, with pw already point-major.
Vec coupling_residual(const Vec& x, const Vec& pw, const Shape& s) {
  return x - pw.cwiseProduct(cluster_mass(x, s));
}

// Adjoint of (I - diag(pw) C) applied to v.
Vec coupling_adjoint(const Vec& v, const Vec& pw, const Shape& s) {
  return v - cluster_mass_adjoint(pw.cwiseProduct(v), s);
}

Vec gather_cluster_column(const Vec& x_pm, int j, const Shape& s) {
  Vec out(s.n);
  for (int p = 0; p < s.n; ++p) out[p] = x_pm[p * s.k + j];
  return out;
}

int resolved_cg_max_iter(const SolverConfig& cfg, const Shape& s) {
  return cfg.cg_max_iter > 0 ? cfg.cg_max_iter : 10 * s.nk();
}

Vec cardinality_vec(const ConstraintSet& cs) {
  if (!cs.cardinalities) return Vec();
  Vec u(static_cast<Eigen::Index>(cs.cardinalities->size()));
  for (size_t j = 0; j < cs.cardinalities->size(); ++j)
    u[static_cast<Eigen::Index>(j)] = (*cs.cardinalities)[j];
  return u;
}

}  // namespace

namespace detail {

XSystem::XSystem(const SolverState& state, const DataMatrix& S,
                 const ConstraintSet& cs, const SolverConfig& cfg)
    : state_(state),
      shape_(state.shape),
      rho_(cfg.penalties()),
      has_cardinality_(cs.has_cardinalities()),
      pw_(to_point_major(state.w, state.shape)),
      u_(cardinality_vec(cs)),
      ml_gain_(cross_first_to_second(cs.must_links, state.z3, state.shape)),
      cl_gain_(cross_first_to_second(cs.cannot_links, state.z4, state.shape)) {
  const Shape& s = shape_;
  const Vec b = flatten_point_major(squared_distance_matrix(S, state.w), s);

  Vec r = -b - point_expand(state.y1, s) + rho_[0] * Vec::Ones(s.nk());
  r += -state.y2 + rho_[1] * state.z1;
  r += -state.y3 + rho_[2] * state.z2;
  if (has_cardinality_) {
    r -= to_point_major(cluster_totals_adjoint(state.y4 - rho_[3] * u_, s), s);
  }
  r -= coupling_adjoint(state.y5, pw_, s);
  if (ml_gain_.size() > 0) {
    r += (rho_[5] * cs.ml_count() - state.y6) * ml_gain_;
  }
  r += -state.y7 + rho_[6] * state.z3;
  if (cl_gain_.size() > 0) {
    r -= state.y8 * cl_gain_;
  }
  r += -state.y9 + rho_[8] * state.z4;
  rhs_ = std::move(r);
}

Vec XSystem::apply(const Vec& v) const {
  const Shape& s = shape_;
  Vec out = (rho_[1] + rho_[2] + rho_[6] + rho_[8]) * v;
  out += rho_[0] * point_expand(point_sums(v, s), s);
  if (has_cardinality_) {
    out += rho_[3] * to_point_major(
                         cluster_totals_adjoint(
                             cluster_totals(to_cluster_major(v, s), s), s),
                         s);
  }
  out += rho_[4] * coupling_adjoint(coupling_residual(v, pw_, s), pw_, s);
  if (ml_gain_.size() > 0) out += (rho_[5] * ml_gain_.dot(v)) * ml_gain_;
  if (cl_gain_.size() > 0) out += (rho_[7] * cl_gain_.dot(v)) * cl_gain_;
  return out;
}

WSystem::WSystem(const SolverState& state, const DataMatrix& S,
                 const SolverConfig& cfg)
    : S_(S),
      shape_(state.shape),
      rho5_(cfg.penalties()[4]),
      ridge_(cfg.ridge_eps),
      mass_(cluster_totals(to_cluster_major(state.x, state.shape), state.shape)) {
  const Shape& s = shape_;
  rhs_.resize(s.nk());
  for (int j = 0; j < s.k; ++j) {
    const Vec xj = gather_cluster_column(state.x, j, s);
    const Vec y5j = gather_cluster_column(state.y5, j, s);
    rhs_.segment(j * s.n, s.n) =
        2.0 * (S.transpose() * (S * xj)) + mass_[j] * y5j + rho5_ * mass_[j] * xj;
  }
}

Vec WSystem::apply(const Vec& v) const {
  const Shape& s = shape_;
  Vec out(s.nk());
  for (int j = 0; j < s.k; ++j) {
    const auto vj = v.segment(j * s.n, s.n);
    out.segment(j * s.n, s.n) =
        2.0 * mass_[j] * (S_.transpose() * (S_ * vj)) +
        (rho5_ * mass_[j] * mass_[j] + ridge_) * vj;
  }
  return out;
}

}  // namespace detail

SolverState init_state(const DataMatrix& S, int k, const ConstraintSet& cs,
                       const SolverConfig& cfg, const PointMajorVec& x_kmeans) {
  (void)cfg;
  const Shape s = shape_of(S, k);
  check_shape(s);
  check_length(x_kmeans, s.nk(), "init_state: warm start");

  SolverState state;
  state.shape = s;
  state.x = x_kmeans;
  const Vec sizes = cluster_totals(to_cluster_major(x_kmeans, s), s);
  for (int j = 0; j < s.k; ++j) {
    if (sizes[j] <= 0.0) {
      throw ValidationError("init_state: warm start leaves cluster " +
                            std::to_string(j) + " empty");
    }
  }
  state.w.resize(s.nk());
  for (int j = 0; j < s.k; ++j)
    for (int p = 0; p < s.n; ++p)
      state.w[j * s.n + p] = x_kmeans[p * s.k + j] / sizes[j];

  state.z1 = state.z2 = state.z3 = state.z4 = x_kmeans;
  state.y1 = Vec::Zero(s.n);
  state.y2 = state.y3 = state.y5 = state.y7 = state.y9 = Vec::Zero(s.nk());
  state.y4 = cs.has_cardinalities() ? Vec::Zero(s.k) : Vec();
  state.y6 = state.y8 = 0.0;
  state.objective_trace.push_back(objective_value(S, state.x, state.w));
  return state;
}

LagrangianValue augmented_lagrangian(const SolverState& state, const DataMatrix& S,
                                     const ConstraintSet& cs, const SolverConfig& cfg) {
  const Shape& s = state.shape;
  const Penalties rho = cfg.penalties();
  constexpr double kFeasTol = 1e-9;

  LagrangianValue out;
  double total = objective_value(S, state.x, state.w);

  const Vec onehot_res = point_sums(state.x, s) - Vec::Ones(s.n);
  total += state.y1.dot(onehot_res) + 0.5 * rho[0] * onehot_res.squaredNorm();

  out.z1_in_box = (state.z1.minCoeff() >= -kFeasTol) &&
                  (state.z1.maxCoeff() <= 1.0 + kFeasTol);
  const Vec box_res = state.x - state.z1;
  total += state.y2.dot(box_res) + 0.5 * rho[1] * box_res.squaredNorm();

  const double sphere_sq =
      (state.z2 - 0.5 * Vec::Ones(s.nk())).squaredNorm() - 0.25 * s.nk();
  out.z2_on_sphere = std::abs(sphere_sq) <= kFeasTol * std::max(1.0, 0.25 * s.nk());
  const Vec sphere_res = state.x - state.z2;
  total += state.y3.dot(sphere_res) + 0.5 * rho[2] * sphere_res.squaredNorm();

  if (cs.has_cardinalities()) {
    const Vec card_res = cardinality_residual(state.x, cs, s);
    total += state.y4.dot(card_res) + 0.5 * rho[3] * card_res.squaredNorm();
  }

  const Vec pw = to_point_major(state.w, s);
  const Vec couple_res = coupling_residual(state.x, pw, s);
  total += state.y5.dot(couple_res) + 0.5 * rho[4] * couple_res.squaredNorm();

  if (cs.ml_count() > 0) {
    const double ml_res =
        state.z3.dot(cross_second_to_first(cs.must_links, state.x, s)) -
        cs.ml_count();
    total += state.y6 * ml_res + 0.5 * rho[5] * ml_res * ml_res;
  }
  const Vec ml_copy_res = state.x - state.z3;
  total += state.y7.dot(ml_copy_res) + 0.5 * rho[6] * ml_copy_res.squaredNorm();

  if (cs.cl_count() > 0) {
    const double cl_res =
        state.z4.dot(cross_second_to_first(cs.cannot_links, state.x, s));
    total += state.y8 * cl_res + 0.5 * rho[7] * cl_res * cl_res;
  }
  const Vec cl_copy_res = state.x - state.z4;
  total += state.y9.dot(cl_copy_res) + 0.5 * rho[8] * cl_copy_res.squaredNorm();

  out.value = total;
  return out;
}

PointMajorVec update_x(SolverState& state, const DataMatrix& S,
                       const ConstraintSet& cs, const SolverConfig& cfg) {
  const detail::XSystem system(state, S, cs, cfg);
  Vec x = state.x;
  const auto cg = conjugate_gradient([&](const Vec& v) { return system.apply(v); },
                                     system.rhs(), x, cfg.cg_tol,
                                     resolved_cg_max_iter(cfg, state.shape));
  if (!cg.converged) {
    state.cg_failures++;
    log::warn("assignment CG stopped at relative residual " +
              std::to_string(cg.relative_residual));
  }
  return x;
}

ClusterMajorVec update_w(SolverState& state, const DataMatrix& S,
                         const SolverConfig& cfg) {
  const detail::WSystem system(state, S, cfg);
  Vec w = state.w;
  const auto cg = conjugate_gradient([&](const Vec& v) { return system.apply(v); },
                                     system.rhs(), w, cfg.cg_tol,
                                     resolved_cg_max_iter(cfg, state.shape));
  if (!cg.converged) {
    state.cg_failures++;
    log::warn("weight CG stopped at relative residual " +
              std::to_string(cg.relative_residual));
  }
  // Healthy coupling weights stay at the 1/cluster-size scale. A transient
  // assignment whose cluster mass crosses zero makes the weight system
  // near-singular and its exact solution astronomically large; treat that
  // like a failed solve and keep the previous iterate.
  constexpr double kWeightGuard = 100.0;
  const double magnitude = w.lpNorm<Eigen::Infinity>();
  if (!std::isfinite(magnitude) || magnitude > kWeightGuard) {
    state.cg_failures++;
    log::warn("weight update rejected at magnitude " + std::to_string(magnitude));
    return state.w;
  }
  return w;
}

PointMajorVec update_z1(const SolverState& state, const SolverConfig& cfg) {
  const double rho2 = cfg.penalties()[1];
  return (state.x + state.y2 / rho2).cwiseMax(0.0).cwiseMin(1.0);
}

PointMajorVec update_z2(const SolverState& state, const SolverConfig& cfg) {
  const Shape& s = state.shape;
  const double rho3 = cfg.penalties()[2];
  const Vec half = 0.5 * Vec::Ones(s.nk());
  Vec shifted = state.x + state.y3 / rho3 - half;
  if (shifted.norm() == 0.0) {
    // The projection is set-valued at the sphere center; pick a seeded
    // direction so the choice is reproducible.
    Rng rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL * (state.iteration + 1)));
    for (int i = 0; i < s.nk(); ++i) shifted[i] = rng.normal();
    shifted *= 1e-8 / shifted.norm();
  }
  const double radius = 0.5 * std::sqrt(static_cast<double>(s.nk()));
  return half + (radius / shifted.norm()) * shifted;
}

namespace {

// Solves (rank_rho * a aᵀ + copy_rho * I) z = r in closed form.
Vec rank_one_solve(const Vec& a, const Vec& r, double rank_rho, double copy_rho) {
  Vec z = r / copy_rho;
  if (a.size() > 0 && rank_rho > 0.0) {
    const double scale =
        rank_rho * a.dot(r) / (copy_rho * (copy_rho + rank_rho * a.squaredNorm()));
    z -= scale * a;
  }
  return z;
}

}  // namespace

PointMajorVec update_z3(const SolverState& state, const ConstraintSet& cs,
                        const SolverConfig& cfg) {
  const Shape& s = state.shape;
  const Penalties rho = cfg.penalties();
  const Vec a = cross_second_to_first(cs.must_links, state.x, s);
  Vec r = state.y7 + rho[6] * state.x;
  if (a.size() > 0) r += (rho[5] * cs.ml_count() - state.y6) * a;
  return rank_one_solve(a, r, rho[5], rho[6]);
}

PointMajorVec update_z4(const SolverState& state, const ConstraintSet& cs,
                        const SolverConfig& cfg) {
  const Shape& s = state.shape;
  const Penalties rho = cfg.penalties();
  const Vec b = cross_second_to_first(cs.cannot_links, state.x, s);
  Vec r = state.y9 + rho[8] * state.x;
  if (b.size() > 0) r -= state.y8 * b;
  return rank_one_solve(b, r, rho[7], rho[8]);
}

void update_duals(SolverState& state, const ConstraintSet& cs,
                  const SolverConfig& cfg) {
  const Shape& s = state.shape;
  const Penalties rho = cfg.penalties();

  state.y1 += rho[0] * (point_sums(state.x, s) - Vec::Ones(s.n));
  state.y2 += rho[1] * (state.x - state.z1);
  state.y3 += rho[2] * (state.x - state.z2);
  if (cs.has_cardinalities()) {
    state.y4 += rho[3] * cardinality_residual(state.x, cs, s);
  }
  const Vec pw = to_point_major(state.w, s);
  state.y5 += rho[4] * coupling_residual(state.x, pw, s);
  if (cs.ml_count() > 0) {
    state.y6 += rho[5] * (state.z3.dot(cross_second_to_first(cs.must_links,
                                                             state.x, s)) -
                          cs.ml_count());
  }
  state.y7 += rho[6] * (state.x - state.z3);
  if (cs.cl_count() > 0) {
    state.y8 +=
        rho[7] * state.z4.dot(cross_second_to_first(cs.cannot_links, state.x, s));
  }
  state.y9 += rho[8] * (state.x - state.z4);
}

bool trace_converged(const std::vector<double>& trace, int window, double tol) {
  if (window < 2 || static_cast<int>(trace.size()) < window) return false;
  const auto begin = trace.end() - window;
  double mean = 0.0;
  for (auto it = begin; it != trace.end(); ++it) mean += *it;
  mean /= window;
  double variance = 0.0;
  for (auto it = begin; it != trace.end(); ++it) variance += (*it - mean) * (*it - mean);
  variance /= window;
  return std::sqrt(variance) <= tol;
}

SolveResult extract_solution(const SolverState& state, const DataMatrix& S,
                             const ConstraintSet& cs) {
  const Shape& s = state.shape;
  SolveResult result;
  result.labels.resize(static_cast<size_t>(s.n));
  for (int i = 0; i < s.n; ++i) {
    int best = 0;
    for (int j = 1; j < s.k; ++j) {
      if (state.x[i * s.k + j] > state.x[i * s.k + best]) best = j;
    }
    result.labels[static_cast<size_t>(i)] = best;
  }

  const Vec rounded = to_assignment(result.labels, s);
  result.residuals.onehot =
      (point_sums(rounded, s) - Vec::Ones(s.n)).lpNorm<Eigen::Infinity>();
  result.residuals.cardinality =
      cs.has_cardinalities()
          ? cardinality_residual(rounded, cs, s).lpNorm<Eigen::Infinity>()
          : 0.0;
  result.residuals.mustlink_gap =
      cs.ml_count() - mustlink_quadratic(rounded, cs, s);
  result.residuals.cannotlink_value = cannotlink_quadratic(rounded, cs, s);
  result.residuals.consensus =
      std::max({(state.x - state.z1).lpNorm<Eigen::Infinity>(),
                (state.x - state.z2).lpNorm<Eigen::Infinity>(),
                (state.x - state.z3).lpNorm<Eigen::Infinity>(),
                (state.x - state.z4).lpNorm<Eigen::Infinity>()});

  result.x_final = state.x;
  result.objective = kmeans_objective(S, result.labels, s.k);
  result.iterations = state.iteration;
  result.trace = state.objective_trace;
  return result;
}

SolveResult run(const DataMatrix& S, int k, const ConstraintSet& cs,
                const SolverConfig& cfg) {
  const Shape s = shape_of(S, k);
  check_shape(s);
  validate_or_throw(cs, s);

  const KmeansResult warm = lloyd(S, k, cfg.seed);
  SolverState state = init_state(S, k, cs, cfg, to_assignment(warm.labels, s));

  bool converged = false;
  SolverState last_finite = state;
  for (int iter = 0; iter < cfg.max_outer_iters; ++iter) {
    state.x = update_x(state, S, cs, cfg);
    state.w = update_w(state, S, cfg);
    state.z1 = update_z1(state, cfg);
    state.z2 = update_z2(state, cfg);
    state.z3 = update_z3(state, cs, cfg);
    state.z4 = update_z4(state, cs, cfg);
    update_duals(state, cs, cfg);
    state.iteration = iter + 1;
    const double objective = objective_value(S, state.x, state.w);
    if (!std::isfinite(objective) || !state.x.allFinite()) {
      log::warn("iterates diverged at iteration " + std::to_string(state.iteration) +
                "; returning the last finite state");
      state = last_finite;
      break;
    }
    state.objective_trace.push_back(objective);
    last_finite = state;
    if (trace_converged(state.objective_trace, cfg.conv_window, cfg.conv_std)) {
      converged = true;
      break;
    }
  }
  if (state.cg_failures > 0) {
    log::info("solve finished with " + std::to_string(state.cg_failures) +
              " unconverged CG calls");
  }

  SolveResult result = extract_solution(state, S, cs);
  result.converged = converged;
  return result;
}

}  // namespace ckmeans
