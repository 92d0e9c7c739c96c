#pragma once

#include <vector>

#include "ckmeans/types.hpp"

namespace ckmeans {

/// n x k matrix of squared Euclidean distances from each point to each
/// weighted centroid: B(i,j) = || s_i - sum_p w(p,j) s_p ||^2.
Mat squared_distance_matrix(const DataMatrix& S, const ClusterMajorVec& w);

/// Flattens an n x k matrix into the point-major layout: out(i*k + j) = B(i,j).
PointMajorVec flatten_point_major(const Mat& B, const Shape& s);

/// Clustering objective of a (possibly fractional) assignment/weight pair:
/// sum_ij x(i,j) * B(i,j).
double objective_value(const DataMatrix& S, const PointMajorVec& x,
                       const ClusterMajorVec& w);

/// Classic K-means objective of a hard labeling: sum over clusters of the
/// squared distances to the cluster's arithmetic mean. Empty clusters
/// contribute zero.
double kmeans_objective(const DataMatrix& S, const std::vector<int>& labels, int k);

}  // namespace ckmeans
