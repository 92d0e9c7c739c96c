#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ckmeans/constraints.hpp"
#include "ckmeans/types.hpp"

namespace ckmeans {

/// Reads a CSV of points, one row per point, numeric columns as features.
/// Ragged rows, non-numeric cells and empty files raise IngestionError with
/// the offending line number.
DataMatrix parse_points(const std::string& path);

/// Reads line-oriented constraints: "ML a b", "CL a b" (0-based point
/// indices) and "CARD j u_j". CARD lines must cover every cluster or be
/// absent entirely. Blank lines and lines starting with '#' are skipped.
/// The result is validated against the shape; hard violations raise
/// ValidationError.
ConstraintSet parse_constraints(const std::string& path, int n, int k);

/// Reads ground-truth labels, one integer per line.
std::vector<int> parse_labels(const std::string& path);

struct BlobsResult {
  DataMatrix points;        ///< d x (k * per_cluster)
  std::vector<int> labels;  ///< generating blob of each point
};

/// k isotropic Gaussian blobs of per_cluster points each, blob centers at
/// mutual distance >= separation, per-coordinate std = spread.
/// Deterministic per seed.
BlobsResult gen_blobs(int k, int per_cluster, int d, double spread,
                      double separation, std::uint64_t seed);

}  // namespace ckmeans
