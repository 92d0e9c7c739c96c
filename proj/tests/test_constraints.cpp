#include <doctest.h>

#include <string>
#include <vector>

#include "ckmeans/constraints.hpp"
#include "ckmeans/kmeans.hpp"
#include "ckmeans/structured_ops.hpp"
#include "helpers.hpp"

using namespace ckmeans;
using testutil::random_labels;

namespace {

bool mentions(const std::vector<std::string>& lines, const std::string& needle) {
  for (const auto& line : lines)
    if (line.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("validate: consistent set passes, hard violations are errors") {
  const Shape s{4, 2, 1};

  ConstraintSet ok;
  ok.cardinalities = std::vector<int>{2, 2};
  ok.add_must_link(0, 1);
  ok.add_cannot_link(0, 2);
  CHECK(validate(ok, s).ok());
  CHECK(validate(ok, s).warnings.empty());

  ConstraintSet bad_sum;
  bad_sum.cardinalities = std::vector<int>{3, 2};
  const auto report = validate(bad_sum, s);
  CHECK_FALSE(report.ok());
  CHECK(mentions(report.errors, "sum 5 != n=4"));

  ConstraintSet out_of_range;
  out_of_range.add_must_link(0, 7);
  CHECK_FALSE(validate(out_of_range, s).ok());

  ConstraintSet contradictory;
  contradictory.add_must_link(1, 0);
  contradictory.add_cannot_link(0, 1);  // same unordered pair
  CHECK(mentions(validate(contradictory, s).errors, "both"));

  CHECK_THROWS_AS(validate_or_throw(contradictory, s), ValidationError);
}

TEST_CASE("validate: must-link closure infeasibilities are flagged") {
  const Shape s{4, 2, 1};
  ConstraintSet cs;
  cs.add_must_link(0, 1);
  cs.add_must_link(1, 2);
  cs.add_cannot_link(0, 2);
  const auto report = validate(cs, s);
  CHECK(report.ok());  // transitive conflict is a warning, not an error
  CHECK(mentions(report.warnings, "closure"));

  ConstraintSet oversized;
  oversized.cardinalities = std::vector<int>{2, 2};
  oversized.add_must_link(0, 1);
  oversized.add_must_link(1, 2);
  const auto sized = validate(oversized, s);
  CHECK(sized.ok());
  CHECK(mentions(sized.warnings, "exceeds"));
}

TEST_CASE("pairs are stored unordered and deduplicated") {
  ConstraintSet cs;
  cs.add_must_link(2, 1);
  cs.add_must_link(1, 2);
  cs.add_must_link(2, 3);
  CHECK(cs.ml_count() == 2);
  cs.add_cannot_link(0, 4);
  cs.add_cannot_link(4, 0);
  CHECK(cs.cl_count() == 1);
}

TEST_CASE("link quadratics count satisfied/violated pairs on one-hot input") {
  const Shape s{4, 2, 1};
  ConstraintSet cs;
  cs.add_must_link(0, 1);
  cs.add_must_link(2, 3);
  cs.add_cannot_link(0, 2);

  const Vec all_ok = to_assignment({0, 0, 1, 1}, s);
  CHECK(mustlink_quadratic(all_ok, cs, s) == 2.0);
  CHECK(cannotlink_quadratic(all_ok, cs, s) == 0.0);

  const Vec one_violated = to_assignment({0, 1, 1, 1}, s);
  CHECK(mustlink_quadratic(one_violated, cs, s) == 1.0);

  const Vec cl_violated = to_assignment({0, 0, 0, 0}, s);
  CHECK(cannotlink_quadratic(cl_violated, cs, s) == 1.0);
}

TEST_CASE("link quadratics match the label-comparison oracle on random input") {
  Rng rng(13);
  const Shape s{6, 3, 1};
  ConstraintSet cs;
  for (const auto& p : testutil::random_pairs(rng, s.n, 5)) cs.add_must_link(p.first, p.second);
  for (const auto& p : testutil::random_pairs(rng, s.n, 3, cs.must_links))
    cs.add_cannot_link(p.first, p.second);

  for (int rep = 0; rep < 50; ++rep) {
    const auto labels = random_labels(rng, s.n, s.k);
    const Vec x = to_assignment(labels, s);
    int ml_same = 0, cl_same = 0;
    for (const auto& [a, b] : cs.must_links)
      ml_same += labels[static_cast<size_t>(a)] == labels[static_cast<size_t>(b)];
    for (const auto& [a, b] : cs.cannot_links)
      cl_same += labels[static_cast<size_t>(a)] == labels[static_cast<size_t>(b)];
    CHECK(mustlink_quadratic(x, cs, s) == static_cast<double>(ml_same));
    CHECK(cannotlink_quadratic(x, cs, s) == static_cast<double>(cl_same));
  }
}

TEST_CASE("link identities hold exactly for one-hot assignments") {
  Rng rng(37);
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 2 + rng.uniform_int(7);  // n <= 8
    const int k = 1 + rng.uniform_int(4);  // k <= 4
    const Shape s{n, k, 1};
    ConstraintSet cs;
    for (const auto& p : testutil::random_pairs(rng, n, 1 + rng.uniform_int(3)))
      cs.add_must_link(p.first, p.second);
    for (const auto& p : testutil::random_pairs(rng, n, 1 + rng.uniform_int(3),
                                                cs.must_links))
      cs.add_cannot_link(p.first, p.second);

    const Vec x = to_assignment(random_labels(rng, n, k), s);
    const double v = cs.ml_count();
    const double e = cs.cl_count();

    const PairSelector e1{cs.must_links, PairSelector::Side::first};
    const PairSelector e2{cs.must_links, PairSelector::Side::second};
    const PairSelector e3{cs.cannot_links, PairSelector::Side::first};
    const PairSelector e4{cs.cannot_links, PairSelector::Side::second};

    // Selected blocks of a one-hot vector have norm one per pair.
    CHECK(select(e1, x, s).squaredNorm() == v);
    CHECK(select(e2, x, s).squaredNorm() == v);

    const double ml_quad = mustlink_quadratic(x, cs, s);
    CHECK((select(e1, x, s) - select(e2, x, s)).squaredNorm() == 2.0 * v - 2.0 * ml_quad);

    const double cl_quad = cannotlink_quadratic(x, cs, s);
    CHECK((select(e3, x, s) + select(e4, x, s)).squaredNorm() == 2.0 * e + 2.0 * cl_quad);
  }
}

TEST_CASE("cardinality residual") {
  const Shape s{4, 2, 1};
  ConstraintSet cs;
  cs.cardinalities = std::vector<int>{2, 2};

  CHECK(cardinality_residual(to_assignment({0, 0, 1, 1}, s), cs, s) == Vec::Zero(2));

  Vec want(2);
  want << 1, -1;
  CHECK(cardinality_residual(to_assignment({0, 0, 0, 1}, s), cs, s) == want);

  Rng rng(3);
  const Vec fractional = testutil::random_vec(rng, s.nk(), 0.0, 1.0);
  const Vec res = cardinality_residual(fractional, cs, s);
  for (int j = 0; j < s.k; ++j) {
    double direct = -(*cs.cardinalities)[static_cast<size_t>(j)];
    for (int i = 0; i < s.n; ++i) direct += fractional[i * s.k + j];
    CHECK(res[j] == doctest::Approx(direct).epsilon(1e-13));
  }

  ConstraintSet no_u;
  CHECK_THROWS_AS(cardinality_residual(fractional, no_u, s), ValidationError);
}
