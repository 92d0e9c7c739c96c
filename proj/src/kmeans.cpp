#include "ckmeans/kmeans.hpp"

#include <limits>
#include <string>

#include "ckmeans/objective.hpp"
#include "ckmeans/rng.hpp"

namespace ckmeans {
namespace {

std::vector<int> seed_centers(const DataMatrix& S, int k, Rng& rng) {
  const int n = static_cast<int>(S.cols());
  std::vector<int> centers;
  centers.reserve(static_cast<size_t>(k));
  centers.push_back(rng.uniform_int(n));

  std::vector<double> min_sq(static_cast<size_t>(n),
                             std::numeric_limits<double>::infinity());
  while (static_cast<int>(centers.size()) < k) {
    const auto last = S.col(centers.back());
    for (int i = 0; i < n; ++i) {
      const double dist = (S.col(i) - last).squaredNorm();
      min_sq[static_cast<size_t>(i)] = std::min(min_sq[static_cast<size_t>(i)], dist);
    }
    centers.push_back(rng.weighted_pick(min_sq));
  }
  return centers;
}

int nearest_centroid(const DataMatrix& S, const Mat& centroids, int i) {
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int j = 0; j < centroids.cols(); ++j) {
    const double dist = (S.col(i) - centroids.col(j)).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = j;
    }
  }
  return best;
}

// Moves the point farthest from its centroid into each empty cluster.
void repair_empty_clusters(const DataMatrix& S, const Mat& centroids,
                           std::vector<int>& labels, std::vector<int>& counts) {
  const int n = static_cast<int>(S.cols());
  const int k = static_cast<int>(counts.size());
  for (int j = 0; j < k; ++j) {
    if (counts[static_cast<size_t>(j)] > 0) continue;
    int worst = -1;
    double worst_dist = -1.0;
    for (int i = 0; i < n; ++i) {
      const int owner = labels[static_cast<size_t>(i)];
      if (counts[static_cast<size_t>(owner)] <= 1) continue;  // keep donor nonempty
      const double dist = (S.col(i) - centroids.col(owner)).squaredNorm();
      if (dist > worst_dist) {
        worst_dist = dist;
        worst = i;
      }
    }
    if (worst < 0) continue;  // n == k with every cluster singleton
    counts[static_cast<size_t>(labels[static_cast<size_t>(worst)])]--;
    labels[static_cast<size_t>(worst)] = j;
    counts[static_cast<size_t>(j)]++;
  }
}

Mat centroids_of(const DataMatrix& S, const std::vector<int>& labels, int k) {
  Mat centroids = Mat::Zero(S.rows(), k);
  std::vector<int> counts(static_cast<size_t>(k), 0);
  for (int i = 0; i < S.cols(); ++i) {
    centroids.col(labels[static_cast<size_t>(i)]) += S.col(i);
    counts[static_cast<size_t>(labels[static_cast<size_t>(i)])]++;
  }
  for (int j = 0; j < k; ++j)
    if (counts[static_cast<size_t>(j)] > 0) centroids.col(j) /= counts[static_cast<size_t>(j)];
  return centroids;
}

}  // namespace

KmeansResult lloyd(const DataMatrix& S, int k, std::uint64_t seed, int max_iters) {
  const int n = static_cast<int>(S.cols());
  if (k < 1 || k > n) {
    throw ValidationError("lloyd: k=" + std::to_string(k) +
                          " must be in [1," + std::to_string(n) + "]");
  }
  if (max_iters < 1) throw ValidationError("lloyd: max_iters must be >= 1");

  Rng rng(seed);
  const std::vector<int> center_ids = seed_centers(S, k, rng);
  Mat centroids(S.rows(), k);
  for (int j = 0; j < k; ++j) centroids.col(j) = S.col(center_ids[static_cast<size_t>(j)]);

  std::vector<int> labels(static_cast<size_t>(n), 0);
  KmeansResult result;
  for (int iter = 0; iter < max_iters; ++iter) {
    std::vector<int> counts(static_cast<size_t>(k), 0);
    bool changed = iter == 0;
    for (int i = 0; i < n; ++i) {
      const int j = nearest_centroid(S, centroids, i);
      if (j != labels[static_cast<size_t>(i)]) changed = true;
      labels[static_cast<size_t>(i)] = j;
      counts[static_cast<size_t>(j)]++;
    }
    repair_empty_clusters(S, centroids, labels, counts);
    result.iterations = iter + 1;
    if (!changed) break;
    centroids = centroids_of(S, labels, k);
  }

  result.labels = labels;
  result.centroids = centroids_of(S, labels, k);
  result.objective = kmeans_objective(S, labels, k);
  return result;
}

PointMajorVec to_assignment(const std::vector<int>& labels, const Shape& s) {
  if (static_cast<int>(labels.size()) != s.n) {
    throw DimensionError("to_assignment: " + std::to_string(labels.size()) +
                         " labels for n=" + std::to_string(s.n));
  }
  PointMajorVec x = PointMajorVec::Zero(s.nk());
  for (int i = 0; i < s.n; ++i) {
    const int j = labels[static_cast<size_t>(i)];
    if (j < 0 || j >= s.k) {
      throw ValidationError("to_assignment: label " + std::to_string(j) +
                            " outside [0," + std::to_string(s.k) + ")");
    }
    x[i * s.k + j] = 1.0;
  }
  return x;
}

}  // namespace ckmeans
