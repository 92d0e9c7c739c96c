#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace ckmeans {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Length-nk vector with one value per (point, cluster) slot, ordered by
/// data point: the entry for (point i, cluster j) lives at index i*k + j.
using PointMajorVec = Vec;

/// Same nk slots ordered one cluster at a time: (point p, cluster j) lives
/// at index j*n + p.
using ClusterMajorVec = Vec;

/// Data matrix is d x n, one data point per column.
using DataMatrix = Mat;

struct Shape {
  int n = 0;  ///< number of data points
  int k = 0;  ///< number of clusters
  int d = 1;  ///< feature dimension

  int nk() const { return n * k; }
};

class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& msg) : std::invalid_argument(msg) {}
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class IngestionError : public std::runtime_error {
 public:
  explicit IngestionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when an exhaustive enumeration would exceed its size limit.
class SizeError : public std::runtime_error {
 public:
  explicit SizeError(const std::string& msg) : std::runtime_error(msg) {}
};

inline int point_major_index(int i, int j, const Shape& s) { return i * s.k + j; }
inline int cluster_major_index(int p, int j, const Shape& s) { return j * s.n + p; }

/// Throws ValidationError unless n >= 1, k >= 1, d >= 1 and k <= n.
void check_shape(const Shape& s);

/// Throws DimensionError unless v.size() == expected.
void check_length(const Vec& v, Eigen::Index expected, const char* what);

}  // namespace ckmeans
