#include "ckmeans/structured_ops.hpp"

#include <string>

namespace ckmeans {

void check_shape(const Shape& s) {
  if (s.n < 1 || s.k < 1 || s.d < 1) {
    throw ValidationError("shape requires n >= 1, k >= 1, d >= 1 (got n=" +
                          std::to_string(s.n) + ", k=" + std::to_string(s.k) +
                          ", d=" + std::to_string(s.d) + ")");
  }
  if (s.k > s.n) {
    throw ValidationError("shape requires k <= n (got k=" + std::to_string(s.k) +
                          ", n=" + std::to_string(s.n) + ")");
  }
}

void check_length(const Vec& v, Eigen::Index expected, const char* what) {
  if (v.size() != expected) {
    throw DimensionError(std::string(what) + ": expected length " +
                         std::to_string(expected) + ", got " +
                         std::to_string(v.size()));
  }
}

Vec point_sums(const PointMajorVec& x, const Shape& s) {
  check_length(x, s.nk(), "point_sums");
  Vec out(s.n);
  for (int i = 0; i < s.n; ++i) out[i] = x.segment(i * s.k, s.k).sum();
  return out;
}

PointMajorVec point_expand(const Vec& y, const Shape& s) {
  check_length(y, s.n, "point_expand");
  PointMajorVec out(s.nk());
  for (int i = 0; i < s.n; ++i) out.segment(i * s.k, s.k).setConstant(y[i]);
  return out;
}

PointMajorVec to_point_major(const ClusterMajorVec& w, const Shape& s) {
  check_length(w, s.nk(), "to_point_major");
  PointMajorVec out(s.nk());
  for (int j = 0; j < s.k; ++j)
    for (int p = 0; p < s.n; ++p) out[p * s.k + j] = w[j * s.n + p];
  return out;
}

ClusterMajorVec to_cluster_major(const PointMajorVec& x, const Shape& s) {
  check_length(x, s.nk(), "to_cluster_major");
  ClusterMajorVec out(s.nk());
  for (int j = 0; j < s.k; ++j)
    for (int p = 0; p < s.n; ++p) out[j * s.n + p] = x[p * s.k + j];
  return out;
}

PointMajorVec cluster_mass(const PointMajorVec& x, const Shape& s) {
  check_length(x, s.nk(), "cluster_mass");
  Vec totals = Vec::Zero(s.k);
  for (int i = 0; i < s.n; ++i) totals += x.segment(i * s.k, s.k);
  PointMajorVec out(s.nk());
  for (int i = 0; i < s.n; ++i) out.segment(i * s.k, s.k) = totals;
  return out;
}

PointMajorVec cluster_mass_adjoint(const PointMajorVec& x, const Shape& s) {
  return cluster_mass(x, s);
}

Vec cluster_totals(const ClusterMajorVec& w, const Shape& s) {
  check_length(w, s.nk(), "cluster_totals");
  Vec out(s.k);
  for (int j = 0; j < s.k; ++j) out[j] = w.segment(j * s.n, s.n).sum();
  return out;
}

ClusterMajorVec cluster_totals_adjoint(const Vec& y, const Shape& s) {
  check_length(y, s.k, "cluster_totals_adjoint");
  ClusterMajorVec out(s.nk());
  for (int j = 0; j < s.k; ++j) out.segment(j * s.n, s.n).setConstant(y[j]);
  return out;
}

Vec weighted_centroid(const DataMatrix& S, const ClusterMajorVec& w, int j) {
  const Shape s{static_cast<int>(S.cols()),
                static_cast<int>(w.size() / S.cols()),
                static_cast<int>(S.rows())};
  check_length(w, s.nk(), "weighted_centroid");
  if (j < 0 || j >= s.k) {
    throw DimensionError("weighted_centroid: cluster index " + std::to_string(j) +
                         " out of range [0," + std::to_string(s.k) + ")");
  }
  return S * w.segment(j * s.n, s.n);
}

void check_pairs(const std::vector<std::pair<int, int>>& pairs, const Shape& s,
                 const char* what) {
  for (size_t c = 0; c < pairs.size(); ++c) {
    const auto [a, b] = pairs[c];
    if (a < 0 || a >= s.n || b < 0 || b >= s.n) {
      throw ValidationError(std::string(what) + ": pair " + std::to_string(c) +
                            " = (" + std::to_string(a) + "," + std::to_string(b) +
                            ") has a point index outside [0," + std::to_string(s.n) + ")");
    }
    if (a == b) {
      throw ValidationError(std::string(what) + ": pair " + std::to_string(c) +
                            " links point " + std::to_string(a) + " to itself");
    }
  }
}

Vec select(const PairSelector& op, const PointMajorVec& x, const Shape& s) {
  check_length(x, s.nk(), "select");
  check_pairs(op.pairs, s, "select");
  Vec out(static_cast<Eigen::Index>(op.count()) * s.k);
  for (int c = 0; c < op.count(); ++c)
    out.segment(c * s.k, s.k) = x.segment(op.endpoint(c) * s.k, s.k);
  return out;
}

PointMajorVec select_adjoint(const PairSelector& op, const Vec& y, const Shape& s) {
  check_length(y, static_cast<Eigen::Index>(op.count()) * s.k, "select_adjoint");
  check_pairs(op.pairs, s, "select_adjoint");
  PointMajorVec out = PointMajorVec::Zero(s.nk());
  for (int c = 0; c < op.count(); ++c)
    out.segment(op.endpoint(c) * s.k, s.k) += y.segment(c * s.k, s.k);
  return out;
}

}  // namespace ckmeans
