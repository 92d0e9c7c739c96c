#pragma once

#include <cstdint>
#include <vector>

#include "ckmeans/types.hpp"

namespace ckmeans {

struct KmeansResult {
  std::vector<int> labels;  ///< length n, values in [0, k)
  Mat centroids;            ///< d x k
  double objective = 0.0;
  int iterations = 0;
};

/// Lloyd's algorithm with k-means++ seeding. Deterministic for a fixed seed.
/// Empty clusters are repaired by reassigning the point farthest from its
/// centroid, so the result never has an empty cluster.
KmeansResult lloyd(const DataMatrix& S, int k, std::uint64_t seed, int max_iters = 100);

/// One-hot point-major encoding of a hard labeling.
PointMajorVec to_assignment(const std::vector<int>& labels, const Shape& s);

}  // namespace ckmeans
