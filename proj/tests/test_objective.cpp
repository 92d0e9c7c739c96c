#include <doctest.h>

#include <vector>

#include "ckmeans/kmeans.hpp"
#include "ckmeans/objective.hpp"
#include "ckmeans/structured_ops.hpp"
#include "helpers.hpp"

using namespace ckmeans;
using testutil::random_labels;
using testutil::random_mat;
using testutil::random_vec;

namespace {

// The coupling weights of a one-hot assignment: member weight 1/size, with
// empty clusters left at zero.
ClusterMajorVec coupling_weights(const PointMajorVec& x, const Shape& s) {
  const Vec sizes = cluster_totals(to_cluster_major(x, s), s);
  ClusterMajorVec w = ClusterMajorVec::Zero(s.nk());
  for (int j = 0; j < s.k; ++j) {
    if (sizes[j] <= 0.0) continue;
    for (int p = 0; p < s.n; ++p) w[j * s.n + p] = x[p * s.k + j] / sizes[j];
  }
  return w;
}

}  // namespace

TEST_CASE("distance matrix on hand-checked cases") {
  Mat S(1, 2);
  S << 0, 2;
  Vec w(4);
  w << 1, 0, 0, 1;  // centroids at 0 and 2
  const Mat B = squared_distance_matrix(S, w);
  CHECK(B(0, 0) == doctest::Approx(0));
  CHECK(B(0, 1) == doctest::Approx(4));
  CHECK(B(1, 0) == doctest::Approx(4));
  CHECK(B(1, 1) == doctest::Approx(0));

  const Mat B0 = squared_distance_matrix(S, Vec::Zero(4));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(B0(i, j) == doctest::Approx(S.col(i).squaredNorm()));
}

TEST_CASE("distance matrix matches the naive double loop") {
  Rng rng(5);
  const Shape s{5, 2, 3};
  const Mat S = random_mat(rng, s.d, s.n);
  const Vec w = random_vec(rng, s.nk());
  const Mat B = squared_distance_matrix(S, w);
  for (int i = 0; i < s.n; ++i) {
    for (int j = 0; j < s.k; ++j) {
      Vec centroid = Vec::Zero(s.d);
      for (int p = 0; p < s.n; ++p) centroid += w[j * s.n + p] * S.col(p);
      CHECK(B(i, j) == doctest::Approx((S.col(i) - centroid).squaredNorm())
                           .epsilon(1e-12));
    }
  }
}

TEST_CASE("distance matrix is translation invariant under normalized weights") {
  Rng rng(19);
  const Shape s{6, 2, 2};
  const Mat S = random_mat(rng, s.d, s.n);
  const Vec x = to_assignment(random_labels(rng, s.n, s.k), s);
  const Vec w = coupling_weights(x, s);

  Mat shifted = S;
  Vec t(s.d);
  t << 3.5, -1.25;
  shifted.colwise() += t;
  CHECK(squared_distance_matrix(S, w).isApprox(squared_distance_matrix(shifted, w),
                                               1e-9));
}

TEST_CASE("objective_value basics") {
  Mat S(1, 2);
  S << 0, 2;
  CHECK(objective_value(S, Vec::Zero(4), Vec::Zero(4)) == 0.0);

  Vec x(4), w(4);
  x << 1, 0, 0, 1;
  w << 1, 0, 0, 1;
  CHECK(objective_value(S, x, w) == doctest::Approx(0.0));

  Mat S2(1, 2);
  S2 << 0, 1;
  Vec x2(2), w2(2);
  x2 << 1, 1;
  w2 << 0.5, 0.5;
  CHECK(objective_value(S2, x2, w2) == doctest::Approx(0.5));
}

TEST_CASE("kmeans_objective on hand-checked cases") {
  Mat S(1, 4);
  S << 0, 0.1, 10, 10.1;
  CHECK(kmeans_objective(S, {0, 0, 1, 1}, 2) == doctest::Approx(0.01));
  CHECK(kmeans_objective(S, {0, 1, 2, 3}, 4) == doctest::Approx(0.0));

  Mat same(2, 3);
  same << 1, 1, 1, 2, 2, 2;
  CHECK(kmeans_objective(same, {0, 0, 0}, 1) == doctest::Approx(0.0));

  CHECK_THROWS_AS(kmeans_objective(S, {0, 0, 2, 1}, 2), ValidationError);
}

TEST_CASE("hard assignments tie the two objective forms together") {
  Rng rng(29);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 2 + rng.uniform_int(6);
    const int k = 1 + rng.uniform_int(std::min(n, 4));
    const Shape s{n, k, 1 + rng.uniform_int(3)};
    if (s.nk() > 64) continue;
    const Mat S = random_mat(rng, s.d, s.n);
    const auto labels = random_labels(rng, n, k);
    const Vec x = to_assignment(labels, s);
    const Vec w = coupling_weights(x, s);
    CHECK(objective_value(S, x, w) ==
          doctest::Approx(kmeans_objective(S, labels, k)).epsilon(1e-12));
  }
}
