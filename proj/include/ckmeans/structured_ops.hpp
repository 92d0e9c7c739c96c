#pragma once

#include <utility>
#include <vector>

#include "ckmeans/types.hpp"

// Matrix-free implementations of the structured operators that act on the
// nk assignment/weight vectors. Every function is defined purely by index
// arithmetic; no nk x nk matrix is ever formed. All operators are pure and
// safe to call concurrently.

namespace ckmeans {

/// Sums the k label entries of each point: out_i = sum_j x(i,j).
/// Equals the all-ones vector exactly when x is row-stochastic per point.
Vec point_sums(const PointMajorVec& x, const Shape& s);

/// Adjoint of point_sums: replicates each point's scalar across its k slots.
PointMajorVec point_expand(const Vec& y, const Shape& s);

/// Reorders a cluster-major vector into point-major order.
PointMajorVec to_point_major(const ClusterMajorVec& w, const Shape& s);

/// Reorders a point-major vector into cluster-major order (exact inverse of
/// to_point_major; the permutation is orthogonal).
ClusterMajorVec to_cluster_major(const PointMajorVec& x, const Shape& s);

/// Per-cluster mass, broadcast back onto every point's slot for that
/// cluster: out(i,j) = sum_l x(l,j). Output is constant in i.
PointMajorVec cluster_mass(const PointMajorVec& x, const Shape& s);

/// Adjoint of cluster_mass. The operator is symmetric, so this computes the
/// same sum; kept as a separate entry point so call sites say what they mean.
PointMajorVec cluster_mass_adjoint(const PointMajorVec& x, const Shape& s);

/// Sums each cluster block of a cluster-major vector: out_j = sum_p w(p,j).
Vec cluster_totals(const ClusterMajorVec& w, const Shape& s);

/// Adjoint of cluster_totals: broadcasts y_j into cluster block j.
ClusterMajorVec cluster_totals_adjoint(const Vec& y, const Shape& s);

/// Weighted centroid of cluster j: sum_p w(p,j) * s_p.
Vec weighted_centroid(const DataMatrix& S, const ClusterMajorVec& w, int j);

/// Selects one endpoint of every constrained pair. Applying the operator to
/// a point-major vector stacks, for each pair c, the k label entries of the
/// chosen endpoint into output rows [c*k, c*k + k).
struct PairSelector {
  enum class Side { first, second };

  std::vector<std::pair<int, int>> pairs;
  Side side = Side::first;

  int count() const { return static_cast<int>(pairs.size()); }
  int endpoint(int c) const {
    return side == Side::first ? pairs[static_cast<size_t>(c)].first
                               : pairs[static_cast<size_t>(c)].second;
  }
};

/// Applies the selector: output has length k * count. A point appearing in
/// several pairs is selected once per pair.
Vec select(const PairSelector& op, const PointMajorVec& x, const Shape& s);

/// Adjoint of select: scatters (accumulating) the stacked blocks back onto
/// the selected points' slots.
PointMajorVec select_adjoint(const PairSelector& op, const Vec& y, const Shape& s);

/// Validates every pair endpoint against the shape; throws ValidationError
/// on an out-of-range index or a pair with equal endpoints.
void check_pairs(const std::vector<std::pair<int, int>>& pairs, const Shape& s,
                 const char* what);

}  // namespace ckmeans
