#include "ckmeans/objective.hpp"

#include <string>

#include "ckmeans/structured_ops.hpp"

namespace ckmeans {

Mat squared_distance_matrix(const DataMatrix& S, const ClusterMajorVec& w) {
  const int n = static_cast<int>(S.cols());
  const int d = static_cast<int>(S.rows());
  if (n < 1 || d < 1) throw DimensionError("squared_distance_matrix: empty data matrix");
  if (w.size() % n != 0 || w.size() == 0) {
    throw DimensionError("squared_distance_matrix: weight length " +
                         std::to_string(w.size()) + " is not a multiple of n=" +
                         std::to_string(n));
  }
  const int k = static_cast<int>(w.size() / n);

  Mat centroids(d, k);  // column j = weighted centroid of cluster j
  for (int j = 0; j < k; ++j) centroids.col(j) = S * w.segment(j * n, n);

  const Vec point_sq = S.colwise().squaredNorm();
  const Vec cent_sq = centroids.colwise().squaredNorm();
  Mat B = -2.0 * (S.transpose() * centroids);
  B.colwise() += point_sq;
  B.rowwise() += cent_sq.transpose();
  // Clamp the tiny negatives the expanded form can produce.
  return B.cwiseMax(0.0);
}

PointMajorVec flatten_point_major(const Mat& B, const Shape& s) {
  if (B.rows() != s.n || B.cols() != s.k) {
    throw DimensionError("flatten_point_major: matrix is " + std::to_string(B.rows()) +
                         "x" + std::to_string(B.cols()) + ", shape wants " +
                         std::to_string(s.n) + "x" + std::to_string(s.k));
  }
  PointMajorVec out(s.nk());
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.k; ++j) out[i * s.k + j] = B(i, j);
  return out;
}

double objective_value(const DataMatrix& S, const PointMajorVec& x,
                       const ClusterMajorVec& w) {
  const Shape s{static_cast<int>(S.cols()),
                static_cast<int>(x.size() / S.cols()),
                static_cast<int>(S.rows())};
  check_length(x, s.nk(), "objective_value: x");
  check_length(w, s.nk(), "objective_value: w");
  const Mat B = squared_distance_matrix(S, w);
  return x.dot(flatten_point_major(B, s));
}

double kmeans_objective(const DataMatrix& S, const std::vector<int>& labels, int k) {
  const int n = static_cast<int>(S.cols());
  if (static_cast<int>(labels.size()) != n) {
    throw DimensionError("kmeans_objective: " + std::to_string(labels.size()) +
                         " labels for " + std::to_string(n) + " points");
  }
  Mat means = Mat::Zero(S.rows(), k);
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(k);
  for (int i = 0; i < n; ++i) {
    const int j = labels[static_cast<size_t>(i)];
    if (j < 0 || j >= k) {
      throw ValidationError("kmeans_objective: label " + std::to_string(j) +
                            " of point " + std::to_string(i) + " outside [0," +
                            std::to_string(k) + ")");
    }
    means.col(j) += S.col(i);
    counts[j] += 1;
  }
  for (int j = 0; j < k; ++j)
    if (counts[j] > 0) means.col(j) /= counts[j];

  double total = 0.0;
  for (int i = 0; i < n; ++i)
    total += (S.col(i) - means.col(labels[static_cast<size_t>(i)])).squaredNorm();
  return total;
}

}  // namespace ckmeans
