#pragma once

#include <cstdint>
#include <vector>

#include "ckmeans/constraints.hpp"
#include "ckmeans/types.hpp"

namespace ckmeans {

struct OracleResult {
  std::vector<int> best_labels;
  double best_objective = 0.0;
  std::int64_t feasible_count = 0;
  std::int64_t optimal_count = 0;  ///< labelings within 1e-12 of the optimum
  bool feasible = false;
};

/// Yields, in lexicographic order, exactly the label vectors that satisfy
/// every constraint: per-point one-hot by construction, cardinalities met
/// exactly when present, must-link pairs co-clustered, cannot-link pairs
/// separated.
class AssignmentEnumerator {
 public:
  AssignmentEnumerator(int n, int k, const ConstraintSet& cs);

  /// Writes the next feasible assignment into labels; false when exhausted.
  bool next(std::vector<int>& labels);

 private:
  bool satisfies(const std::vector<int>& labels) const;

  int n_;
  int k_;
  const ConstraintSet& cs_;
  std::vector<int> current_;
  bool done_ = false;
};

template <class Fn>
void for_each_feasible(int n, int k, const ConstraintSet& cs, Fn&& fn) {
  AssignmentEnumerator range(n, k, cs);
  std::vector<int> labels;
  while (range.next(labels)) fn(labels);
}

/// Exhaustive global optimum over all k^n assignments. Throws SizeError if
/// k^n exceeds the limit. An unsatisfiable constraint set yields a result
/// with feasible = false rather than an error. Cluster-relabeling symmetry
/// is not quotiented out: optimal_count counts labelings, not partitions.
OracleResult brute_force_solve(const DataMatrix& S, int k, const ConstraintSet& cs,
                               std::int64_t limit = 10'000'000);

}  // namespace ckmeans
