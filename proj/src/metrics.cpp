#include "ckmeans/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ckmeans/types.hpp"

namespace ckmeans {
namespace {

int label_range(const std::vector<int>& labels) {
  int top = 0;
  for (const int v : labels) {
    if (v < 0) throw ValidationError("metrics: negative label " + std::to_string(v));
    top = std::max(top, v + 1);
  }
  return top;
}

// Minimum-cost perfect matching on a square cost matrix (Hungarian
// algorithm, potentials formulation). Returns the assigned column per row.
std::vector<int> min_cost_matching(const Mat& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<double> row_pot(static_cast<size_t>(n + 1), 0.0);
  std::vector<double> col_pot(static_cast<size_t>(n + 1), 0.0);
  std::vector<int> match(static_cast<size_t>(n + 1), 0);  // row matched to column j
  std::vector<int> path(static_cast<size_t>(n + 1), 0);

  for (int row = 1; row <= n; ++row) {
    match[0] = row;
    int col0 = 0;
    std::vector<double> min_slack(static_cast<size_t>(n + 1),
                                  std::numeric_limits<double>::infinity());
    std::vector<bool> used(static_cast<size_t>(n + 1), false);
    do {
      used[static_cast<size_t>(col0)] = true;
      const int row0 = match[static_cast<size_t>(col0)];
      double delta = std::numeric_limits<double>::infinity();
      int col1 = 0;
      for (int col = 1; col <= n; ++col) {
        if (used[static_cast<size_t>(col)]) continue;
        const double slack = cost(row0 - 1, col - 1) -
                             row_pot[static_cast<size_t>(row0)] -
                             col_pot[static_cast<size_t>(col)];
        if (slack < min_slack[static_cast<size_t>(col)]) {
          min_slack[static_cast<size_t>(col)] = slack;
          path[static_cast<size_t>(col)] = col0;
        }
        if (min_slack[static_cast<size_t>(col)] < delta) {
          delta = min_slack[static_cast<size_t>(col)];
          col1 = col;
        }
      }
      for (int col = 0; col <= n; ++col) {
        if (used[static_cast<size_t>(col)]) {
          row_pot[static_cast<size_t>(match[static_cast<size_t>(col)])] += delta;
          col_pot[static_cast<size_t>(col)] -= delta;
        } else {
          min_slack[static_cast<size_t>(col)] -= delta;
        }
      }
      col0 = col1;
    } while (match[static_cast<size_t>(col0)] != 0);
    do {
      const int prev = path[static_cast<size_t>(col0)];
      match[static_cast<size_t>(col0)] = match[static_cast<size_t>(prev)];
      col0 = prev;
    } while (col0 != 0);
  }

  std::vector<int> row_to_col(static_cast<size_t>(n), 0);
  for (int col = 1; col <= n; ++col)
    row_to_col[static_cast<size_t>(match[static_cast<size_t>(col)] - 1)] = col - 1;
  return row_to_col;
}

}  // namespace

double metric_nmi(const std::vector<int>& labels_a, const std::vector<int>& labels_b) {
  if (labels_a.size() != labels_b.size()) {
    throw DimensionError("metric_nmi: label vectors differ in length");
  }
  if (labels_a.empty()) throw DimensionError("metric_nmi: empty labelings");
  const int n = static_cast<int>(labels_a.size());
  const int ka = label_range(labels_a);
  const int kb = label_range(labels_b);

  Mat joint = Mat::Zero(ka, kb);
  for (int i = 0; i < n; ++i)
    joint(labels_a[static_cast<size_t>(i)], labels_b[static_cast<size_t>(i)]) += 1.0;
  joint /= n;
  const Vec pa = joint.rowwise().sum();
  const Vec pb = joint.colwise().sum();

  auto entropy = [](const Vec& p) {
    double h = 0.0;
    for (int i = 0; i < p.size(); ++i)
      if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
    return h;
  };
  double mutual = 0.0;
  for (int a = 0; a < ka; ++a) {
    for (int b = 0; b < kb; ++b) {
      if (joint(a, b) > 0.0)
        mutual += joint(a, b) * std::log(joint(a, b) / (pa[a] * pb[b]));
    }
  }
  const double denom = 0.5 * (entropy(pa) + entropy(pb));
  if (denom <= 0.0) return 1.0;  // both partitions constant, hence identical
  return std::clamp(mutual / denom, 0.0, 1.0);
}

double metric_accuracy(const std::vector<int>& labels_pred,
                       const std::vector<int>& labels_true, int k) {
  if (labels_pred.size() != labels_true.size()) {
    throw DimensionError("metric_accuracy: label vectors differ in length");
  }
  if (labels_pred.empty()) throw DimensionError("metric_accuracy: empty labelings");
  const int n = static_cast<int>(labels_pred.size());
  if (label_range(labels_pred) > k || label_range(labels_true) > k) {
    throw ValidationError("metric_accuracy: label outside [0,k)");
  }

  Mat confusion = Mat::Zero(k, k);
  for (int i = 0; i < n; ++i)
    confusion(labels_pred[static_cast<size_t>(i)], labels_true[static_cast<size_t>(i)]) += 1.0;

  // Maximize matched counts == minimize (max - count).
  const double top = confusion.maxCoeff();
  const std::vector<int> assign = min_cost_matching(Mat(top - confusion.array()));
  double matched = 0.0;
  for (int j = 0; j < k; ++j) matched += confusion(j, assign[static_cast<size_t>(j)]);
  return matched / n;
}

}  // namespace ckmeans
