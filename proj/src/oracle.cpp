#include "ckmeans/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ckmeans/objective.hpp"

namespace ckmeans {

AssignmentEnumerator::AssignmentEnumerator(int n, int k, const ConstraintSet& cs)
    : n_(n), k_(k), cs_(cs), current_(static_cast<size_t>(n), 0) {
  if (n < 1 || k < 1) throw ValidationError("enumerator needs n >= 1 and k >= 1");
}

bool AssignmentEnumerator::satisfies(const std::vector<int>& labels) const {
  if (cs_.cardinalities) {
    std::vector<int> sizes(static_cast<size_t>(k_), 0);
    for (const int j : labels) sizes[static_cast<size_t>(j)]++;
    for (int j = 0; j < k_; ++j) {
      if (sizes[static_cast<size_t>(j)] != (*cs_.cardinalities)[static_cast<size_t>(j)])
        return false;
    }
  }
  for (const auto& [a, b] : cs_.must_links) {
    if (labels[static_cast<size_t>(a)] != labels[static_cast<size_t>(b)]) return false;
  }
  for (const auto& [a, b] : cs_.cannot_links) {
    if (labels[static_cast<size_t>(a)] == labels[static_cast<size_t>(b)]) return false;
  }
  return true;
}

bool AssignmentEnumerator::next(std::vector<int>& labels) {
  while (!done_) {
    const bool good = satisfies(current_);
    if (good) labels = current_;

    // Advance the base-k odometer, last index fastest, so assignments come
    // out in lexicographic order.
    int pos = n_ - 1;
    while (pos >= 0) {
      if (++current_[static_cast<size_t>(pos)] < k_) break;
      current_[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) done_ = true;
    if (good) return true;
  }
  return false;
}

OracleResult brute_force_solve(const DataMatrix& S, int k, const ConstraintSet& cs,
                               std::int64_t limit) {
  const int n = static_cast<int>(S.cols());
  double space = 1.0;
  for (int i = 0; i < n; ++i) space *= k;
  if (space > static_cast<double>(limit)) {
    throw SizeError("brute_force_solve: " + std::to_string(k) + "^" +
                    std::to_string(n) + " assignments exceed the limit " +
                    std::to_string(limit));
  }

  constexpr double kTieTol = 1e-12;
  OracleResult result;
  result.best_objective = std::numeric_limits<double>::infinity();
  for_each_feasible(n, k, cs, [&](const std::vector<int>& labels) {
    result.feasible_count++;
    const double objective = kmeans_objective(S, labels, k);
    if (objective < result.best_objective - kTieTol) {
      result.best_objective = objective;
      result.best_labels = labels;
      result.optimal_count = 1;
    } else if (objective <= result.best_objective + kTieTol) {
      result.optimal_count++;
    }
  });
  result.feasible = result.feasible_count > 0;
  if (!result.feasible) result.best_objective = std::numeric_limits<double>::quiet_NaN();
  return result;
}

}  // namespace ckmeans
