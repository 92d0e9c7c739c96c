#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ckmeans/types.hpp"

namespace ckmeans {

/// Cardinality targets plus must-link / cannot-link pair lists. Pairs are
/// stored unordered (small index first) and deduplicated, so the pair counts
/// equal the number of distinct constraints. Immutable once validated;
/// safe to share across threads.
struct ConstraintSet {
  std::optional<std::vector<int>> cardinalities;  ///< target size per cluster
  std::vector<std::pair<int, int>> must_links;
  std::vector<std::pair<int, int>> cannot_links;

  /// Inserts a normalized pair, ignoring exact duplicates.
  void add_must_link(int a, int b);
  void add_cannot_link(int a, int b);

  bool has_cardinalities() const { return cardinalities.has_value(); }
  int ml_count() const { return static_cast<int>(must_links.size()); }
  int cl_count() const { return static_cast<int>(cannot_links.size()); }
  bool empty() const {
    return !cardinalities && must_links.empty() && cannot_links.empty();
  }
};

struct ValidationReport {
  std::vector<std::string> errors;    ///< hard violations
  std::vector<std::string> warnings;  ///< likely-infeasibility flags

  bool ok() const { return errors.empty(); }
};

/// Checks index ranges, cardinality totals and contradictory pairs (errors),
/// then runs the must-link transitive closure to flag closure pairs that are
/// also cannot-links and closure components larger than the biggest
/// cardinality target (warnings).
ValidationReport validate(const ConstraintSet& cs, const Shape& s);

/// Like validate but throws ValidationError on the first hard violation.
void validate_or_throw(const ConstraintSet& cs, const Shape& s);

/// sum over must-link pairs (a,b) of sum_j x(a,j)*x(b,j). For a one-hot x
/// this counts satisfied must-links; it equals ml_count() iff all hold.
double mustlink_quadratic(const PointMajorVec& x, const ConstraintSet& cs,
                          const Shape& s);

/// sum over cannot-link pairs (a,b) of sum_j x(a,j)*x(b,j). For a one-hot x
/// this counts violated cannot-links; zero iff all hold.
double cannotlink_quadratic(const PointMajorVec& x, const ConstraintSet& cs,
                            const Shape& s);

/// Componentwise cluster size minus target. Requires cardinalities present.
Vec cardinality_residual(const PointMajorVec& x, const ConstraintSet& cs,
                         const Shape& s);

}  // namespace ckmeans
