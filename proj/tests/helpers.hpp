#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ckmeans/admm.hpp"
#include "ckmeans/constraints.hpp"
#include "ckmeans/rng.hpp"
#include "ckmeans/structured_ops.hpp"
#include "ckmeans/types.hpp"

// Independent dense realizations of every structured operator, built
// directly from the index definitions, plus a literal term-by-term
// Lagrangian. These are the reference implementations the matrix-free code
// is checked against; they must never call into the operators they test.

namespace testutil {

using ckmeans::ConstraintSet;
using ckmeans::Mat;
using ckmeans::PairSelector;
using ckmeans::Penalties;
using ckmeans::Rng;
using ckmeans::Shape;
using ckmeans::SolverState;
using ckmeans::Vec;

inline Mat dense_point_sums(const Shape& s) {
  Mat m = Mat::Zero(s.n, s.nk());
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.k; ++j) m(i, i * s.k + j) = 1.0;
  return m;
}

// Maps cluster-major input to point-major output.
inline Mat dense_perm(const Shape& s) {
  Mat m = Mat::Zero(s.nk(), s.nk());
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.k; ++j) m(i * s.k + j, j * s.n + i) = 1.0;
  return m;
}

inline Mat dense_cluster_mass(const Shape& s) {
  Mat m = Mat::Zero(s.nk(), s.nk());
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.k; ++j)
      for (int l = 0; l < s.n; ++l) m(i * s.k + j, l * s.k + j) = 1.0;
  return m;
}

inline Mat dense_cluster_totals(const Shape& s) {
  Mat m = Mat::Zero(s.k, s.nk());
  for (int j = 0; j < s.k; ++j)
    for (int p = 0; p < s.n; ++p) m(j, j * s.n + p) = 1.0;
  return m;
}

inline Mat dense_block_extract(const Shape& s, int j) {
  Mat m = Mat::Zero(s.n, s.nk());
  for (int p = 0; p < s.n; ++p) m(p, j * s.n + p) = 1.0;
  return m;
}

inline Mat dense_selector(const PairSelector& op, const Shape& s) {
  Mat m = Mat::Zero(static_cast<Eigen::Index>(op.count()) * s.k, s.nk());
  for (int c = 0; c < op.count(); ++c)
    for (int j = 0; j < s.k; ++j) m(c * s.k + j, op.endpoint(c) * s.k + j) = 1.0;
  return m;
}

inline Vec random_vec(Rng& rng, int size, double lo = -1.0, double hi = 1.0) {
  Vec v(size);
  for (int i = 0; i < size; ++i) v[i] = rng.uniform(lo, hi);
  return v;
}

inline Mat random_mat(Rng& rng, int rows, int cols, double lo = -1.0, double hi = 1.0) {
  Mat m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = rng.uniform(lo, hi);
  return m;
}

inline std::vector<int> random_labels(Rng& rng, int n, int k) {
  std::vector<int> labels(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<size_t>(i)] = rng.uniform_int(k);
  return labels;
}

// Distinct random pairs (a < b), avoiding any pair already in `taken`.
inline std::vector<std::pair<int, int>> random_pairs(
    Rng& rng, int n, int count,
    const std::vector<std::pair<int, int>>& taken = {}) {
  std::vector<std::pair<int, int>> pairs;
  int guard = 0;
  while (static_cast<int>(pairs.size()) < count && guard++ < 1000) {
    int a = rng.uniform_int(n);
    int b = rng.uniform_int(n);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    const std::pair<int, int> p{a, b};
    bool fresh = true;
    for (const auto& q : pairs) fresh = fresh && !(q == p);
    for (const auto& q : taken) fresh = fresh && !(q == p);
    if (fresh) pairs.push_back(p);
  }
  return pairs;
}

// Literal evaluation of the augmented Lagrangian with dense matrices and a
// naive distance loop. Indicator terms are taken as zero (callers keep the
// box/sphere copies feasible).
inline double reference_lagrangian(const SolverState& st, const Mat& S,
                                   const ConstraintSet& cs, const Penalties& rho) {
  const Shape& s = st.shape;
  const Mat psi_t = dense_point_sums(s);
  const Mat perm = dense_perm(s);
  const Mat mass = dense_cluster_mass(s);
  const Mat totals = dense_cluster_totals(s);

  double total = 0.0;
  // Clustering objective via the naive per-pair loop.
  for (int i = 0; i < s.n; ++i) {
    for (int j = 0; j < s.k; ++j) {
      Vec centroid = Vec::Zero(s.d);
      for (int p = 0; p < s.n; ++p) centroid += st.w[j * s.n + p] * S.col(p);
      total += st.x[i * s.k + j] * (S.col(i) - centroid).squaredNorm();
    }
  }

  const Vec onehot = psi_t * st.x - Vec::Ones(s.n);
  total += st.y1.dot(onehot) + 0.5 * rho[0] * onehot.squaredNorm();

  const Vec box = st.x - st.z1;
  total += st.y2.dot(box) + 0.5 * rho[1] * box.squaredNorm();

  const Vec sphere = st.x - st.z2;
  total += st.y3.dot(sphere) + 0.5 * rho[2] * sphere.squaredNorm();

  if (cs.cardinalities) {
    Vec u(s.k);
    for (int j = 0; j < s.k; ++j) u[j] = (*cs.cardinalities)[static_cast<size_t>(j)];
    const Vec card = totals * perm.transpose() * st.x - u;
    total += st.y4.dot(card) + 0.5 * rho[3] * card.squaredNorm();
  }

  const Mat couple = Mat::Identity(s.nk(), s.nk()) -
                     Mat((perm * st.w).asDiagonal()) * mass;
  const Vec couple_res = couple * st.x;
  total += st.y5.dot(couple_res) + 0.5 * rho[4] * couple_res.squaredNorm();

  if (!cs.must_links.empty()) {
    const Mat e1 = dense_selector({cs.must_links, PairSelector::Side::first}, s);
    const Mat e2 = dense_selector({cs.must_links, PairSelector::Side::second}, s);
    const double res = st.z3.dot(e1.transpose() * e2 * st.x) - cs.ml_count();
    total += st.y6 * res + 0.5 * rho[5] * res * res;
  }
  const Vec ml_copy = st.x - st.z3;
  total += st.y7.dot(ml_copy) + 0.5 * rho[6] * ml_copy.squaredNorm();

  if (!cs.cannot_links.empty()) {
    const Mat e3 = dense_selector({cs.cannot_links, PairSelector::Side::first}, s);
    const Mat e4 = dense_selector({cs.cannot_links, PairSelector::Side::second}, s);
    const double res = st.z4.dot(e3.transpose() * e4 * st.x);
    total += st.y8 * res + 0.5 * rho[7] * res * res;
  }
  const Vec cl_copy = st.x - st.z4;
  total += st.y9.dot(cl_copy) + 0.5 * rho[8] * cl_copy.squaredNorm();

  return total;
}

// Random state with feasible box/sphere copies, suitable for Lagrangian and
// derivative checks.
inline SolverState random_state(Rng& rng, const Shape& s, const ConstraintSet& cs) {
  SolverState st;
  st.shape = s;
  st.x = random_vec(rng, s.nk(), -0.3, 1.3);
  st.w = random_vec(rng, s.nk(), -0.5, 1.0);
  st.z1 = random_vec(rng, s.nk(), -0.5, 1.5).cwiseMax(0.0).cwiseMin(1.0);
  Vec shifted = random_vec(rng, s.nk(), -1.0, 1.0);
  shifted *= 0.5 * std::sqrt(static_cast<double>(s.nk())) / shifted.norm();
  st.z2 = 0.5 * Vec::Ones(s.nk()) + shifted;
  st.z3 = random_vec(rng, s.nk(), -0.5, 1.5);
  st.z4 = random_vec(rng, s.nk(), -0.5, 1.5);
  st.y1 = random_vec(rng, s.n);
  st.y2 = random_vec(rng, s.nk());
  st.y3 = random_vec(rng, s.nk());
  st.y4 = cs.cardinalities ? random_vec(rng, s.k) : Vec();
  st.y5 = random_vec(rng, s.nk());
  st.y6 = cs.must_links.empty() ? 0.0 : rng.uniform(-1.0, 1.0);
  st.y7 = random_vec(rng, s.nk());
  st.y8 = cs.cannot_links.empty() ? 0.0 : rng.uniform(-1.0, 1.0);
  st.y9 = random_vec(rng, s.nk());
  return st;
}

// Central difference gradient; exact (up to roundoff) for quadratics.
inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& at,
                       double eps = 0.25) {
  Vec grad(at.size());
  for (int i = 0; i < at.size(); ++i) {
    Vec hi = at, lo = at;
    hi[i] += eps;
    lo[i] -= eps;
    grad[i] = (f(hi) - f(lo)) / (2.0 * eps);
  }
  return grad;
}

inline double rel_error(const Vec& got, const Vec& want) {
  const double denom = want.norm();
  return (got - want).norm() / (denom > 0.0 ? denom : 1.0);
}

}  // namespace testutil
