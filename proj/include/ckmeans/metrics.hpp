#pragma once

#include <vector>

namespace ckmeans {

/// Normalized mutual information with arithmetic-mean normalization.
/// Symmetric, in [0,1], and 1 for identical partitions up to relabeling.
double metric_nmi(const std::vector<int>& labels_a, const std::vector<int>& labels_b);

/// Fraction of points matched under the best bijective cluster-to-class
/// relabeling (optimal assignment on the k x k confusion matrix).
double metric_accuracy(const std::vector<int>& labels_pred,
                       const std::vector<int>& labels_true, int k);

}  // namespace ckmeans
