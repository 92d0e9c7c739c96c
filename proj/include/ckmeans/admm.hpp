#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ckmeans/constraints.hpp"
#include "ckmeans/types.hpp"

namespace ckmeans {

/// Penalty indices follow the multiplier numbering of the augmented
/// Lagrangian: 1 one-hot rows, 2 box copy, 3 sphere copy, 4 cardinality,
/// 5 assignment/weight coupling, 6 must-link bilinear, 7 must-link copy,
/// 8 cannot-link bilinear, 9 cannot-link copy.
using Penalties = std::array<double, 9>;

struct SolverConfig {
  double rho = 0.1;        ///< applied uniformly to all nine penalties
  double cg_tol = 1e-8;    ///< relative residual target for the CG solves
  int cg_max_iter = 0;     ///< 0 means 10 * nk
  int max_outer_iters = 2000;
  int conv_window = 10;    ///< trailing objective values watched for the stop
  double conv_std = 1e-5;  ///< halt when their standard deviation drops below
  double ridge_eps = 1e-9; ///< regularizer for the (possibly singular) weight system
  std::uint64_t seed = 0;

  /// Per-penalty override, for diagnostics and tests that switch individual
  /// terms off. Production solves leave it unset and use the uniform rho.
  std::optional<Penalties> rho_overrides;

  Penalties penalties() const {
    if (rho_overrides) return *rho_overrides;
    Penalties p;
    p.fill(rho);
    return p;
  }
};

struct SolverState {
  Shape shape;
  PointMajorVec x;
  ClusterMajorVec w;
  PointMajorVec z1, z2, z3, z4;
  Vec y1;                  ///< length n
  Vec y2, y3, y5, y7, y9;  ///< length nk
  Vec y4;                  ///< length k; zero-length when no cardinalities
  double y6 = 0.0;
  double y8 = 0.0;
  std::vector<double> objective_trace;
  int iteration = 0;
  int cg_failures = 0;  ///< CG calls that hit max_iter without converging
};

struct Residuals {
  double onehot = 0.0;            ///< max norm of the rounded one-hot row sums minus one
  double cardinality = 0.0;       ///< max norm of rounded cluster sizes minus targets
  double mustlink_gap = 0.0;      ///< must-links violated by the rounded labels
  double cannotlink_value = 0.0;  ///< cannot-links violated by the rounded labels
  double consensus = 0.0;         ///< max over the four copies of ||x - z_i||_inf
};

struct SolveResult {
  std::vector<int> labels;
  PointMajorVec x_final;
  double objective = 0.0;  ///< K-means objective of the rounded labeling
  bool converged = false;
  int iterations = 0;
  Residuals residuals;
  std::vector<double> trace;  ///< relaxed objective value per iteration
};

struct LagrangianValue {
  double value = 0.0;
  bool z1_in_box = true;      ///< box copy feasible within 1e-9
  bool z2_on_sphere = true;   ///< sphere copy feasible within 1e-9
};

/// Builds the initial state from a one-hot warm start: all four copies equal
/// x, duals zero, and the coupling weights w(p,j) = x(p,j) / cluster size.
/// Throws ValidationError if the warm start leaves any cluster empty.
SolverState init_state(const DataMatrix& S, int k, const ConstraintSet& cs,
                       const SolverConfig& cfg, const PointMajorVec& x_kmeans);

/// Evaluates the full augmented Lagrangian. Diagnostics only; the solver's
/// stopping rule watches the plain clustering objective instead.
LagrangianValue augmented_lagrangian(const SolverState& state, const DataMatrix& S,
                                     const ConstraintSet& cs, const SolverConfig& cfg);

/// One assignment update: CG solve of the stationarity system in x.
PointMajorVec update_x(SolverState& state, const DataMatrix& S,
                       const ConstraintSet& cs, const SolverConfig& cfg);

/// One weight update: CG solve of the stationarity system in w.
ClusterMajorVec update_w(SolverState& state, const DataMatrix& S,
                         const SolverConfig& cfg);

/// Box projection of x + y2/rho2.
PointMajorVec update_z1(const SolverState& state, const SolverConfig& cfg);

/// Sphere projection of x + y3/rho3 (center 1/2, radius sqrt(nk)/2). The
/// set-valued case at the exact center is resolved by a seeded perturbation.
PointMajorVec update_z2(const SolverState& state, const SolverConfig& cfg);

/// Must-link copy update; the rank-one system is solved in closed form.
PointMajorVec update_z3(const SolverState& state, const ConstraintSet& cs,
                        const SolverConfig& cfg);

/// Cannot-link copy update; same rank-one closed form.
PointMajorVec update_z4(const SolverState& state, const ConstraintSet& cs,
                        const SolverConfig& cfg);

/// Dual ascent: each multiplier moves by rho times its constraint residual.
void update_duals(SolverState& state, const ConstraintSet& cs, const SolverConfig& cfg);

/// True when the trace has at least `window` entries and the standard
/// deviation of the last `window` of them is at most `tol`.
bool trace_converged(const std::vector<double>& trace, int window, double tol);

/// Rounds the state to hard labels (argmax per point, ties to the lowest
/// cluster) and reports feasibility residuals of the rounded labeling plus
/// the pre-rounding consensus gap.
SolveResult extract_solution(const SolverState& state, const DataMatrix& S,
                             const ConstraintSet& cs);

/// Full solve: k-means warm start, then sweeps of x, w, z1-z4 and the duals
/// until the objective trace settles or max_outer_iters is reached.
SolveResult run(const DataMatrix& S, int k, const ConstraintSet& cs,
                const SolverConfig& cfg);

namespace detail {

// The two stationarity systems behind update_x / update_w, exposed so the
// operators and right-hand sides can be checked directly against numerical
// derivatives of the Lagrangian. Both reference the state they were built
// from and precompute what the CG loop reuses.

class XSystem {
 public:
  XSystem(const SolverState& state, const DataMatrix& S, const ConstraintSet& cs,
          const SolverConfig& cfg);

  /// Left operator (symmetric positive definite).
  Vec apply(const Vec& v) const;
  const Vec& rhs() const { return rhs_; }

 private:
  const SolverState& state_;
  Shape shape_;
  Penalties rho_;
  bool has_cardinality_;
  Vec pw_;         // point-major copy of the coupling weights
  Vec u_;          // cardinality targets (empty if absent)
  Vec ml_gain_;    // bilinear must-link direction, zero-length when no pairs
  Vec cl_gain_;    // bilinear cannot-link direction, zero-length when no pairs
  Vec rhs_;
};

class WSystem {
 public:
  WSystem(const SolverState& state, const DataMatrix& S, const SolverConfig& cfg);

  Vec apply(const Vec& v) const;
  const Vec& rhs() const { return rhs_; }

 private:
  const DataMatrix& S_;
  Shape shape_;
  double rho5_;
  double ridge_;
  Vec mass_;  // per-cluster totals of the current assignment
  Vec rhs_;
};

}  // namespace detail

}  // namespace ckmeans
