#include "ckmeans/constraints.hpp"

#include <algorithm>
#include <numeric>

#include "ckmeans/structured_ops.hpp"

namespace ckmeans {
namespace {

std::pair<int, int> normalized(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

bool contains(const std::vector<std::pair<int, int>>& pairs, std::pair<int, int> p) {
  return std::find(pairs.begin(), pairs.end(), p) != pairs.end();
}

std::string pair_str(std::pair<int, int> p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

// Union-find over point indices, for the must-link closure.
struct DisjointSets {
  std::vector<int> parent;

  explicit DisjointSets(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[static_cast<size_t>(a)] != a) {
      parent[static_cast<size_t>(a)] = parent[parent[static_cast<size_t>(a)]];
      a = parent[static_cast<size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

void ConstraintSet::add_must_link(int a, int b) {
  const auto p = normalized(a, b);
  if (!contains(must_links, p)) must_links.push_back(p);
}

void ConstraintSet::add_cannot_link(int a, int b) {
  const auto p = normalized(a, b);
  if (!contains(cannot_links, p)) cannot_links.push_back(p);
}

ValidationReport validate(const ConstraintSet& cs, const Shape& s) {
  ValidationReport report;
  auto check_pair_list = [&](const std::vector<std::pair<int, int>>& pairs,
                             const char* what) {
    for (const auto& p : pairs) {
      if (p.first < 0 || p.first >= s.n || p.second < 0 || p.second >= s.n) {
        report.errors.push_back(std::string(what) + " pair " + pair_str(p) +
                                " has a point index outside [0," +
                                std::to_string(s.n) + ")");
      } else if (p.first == p.second) {
        report.errors.push_back(std::string(what) + " pair " + pair_str(p) +
                                " links a point to itself");
      }
    }
  };
  check_pair_list(cs.must_links, "must-link");
  check_pair_list(cs.cannot_links, "cannot-link");

  for (const auto& p : cs.must_links) {
    if (contains(cs.cannot_links, normalized(p.first, p.second))) {
      report.errors.push_back("pair " + pair_str(p) +
                              " appears as both must-link and cannot-link");
    }
  }

  if (cs.cardinalities) {
    const auto& u = *cs.cardinalities;
    if (static_cast<int>(u.size()) != s.k) {
      report.errors.push_back("cardinalities have " + std::to_string(u.size()) +
                              " entries for k=" + std::to_string(s.k));
    } else {
      long long total = 0;
      for (int j = 0; j < s.k; ++j) {
        if (u[static_cast<size_t>(j)] < 0) {
          report.errors.push_back("cardinality of cluster " + std::to_string(j) +
                                  " is negative");
        }
        total += u[static_cast<size_t>(j)];
      }
      if (total != s.n) {
        report.errors.push_back("cardinalities sum " + std::to_string(total) +
                                " != n=" + std::to_string(s.n));
      }
    }
  }
  if (!report.ok()) return report;

  // Must-link closure: co-clustered groups implied by transitivity.
  DisjointSets sets(s.n);
  for (const auto& p : cs.must_links) sets.unite(p.first, p.second);
  for (const auto& p : cs.cannot_links) {
    if (sets.find(p.first) == sets.find(p.second)) {
      report.warnings.push_back("cannot-link pair " + pair_str(p) +
                                " joins points forced together by the must-link closure");
    }
  }
  if (cs.cardinalities && !cs.must_links.empty()) {
    std::vector<int> component_size(static_cast<size_t>(s.n), 0);
    for (int i = 0; i < s.n; ++i) component_size[static_cast<size_t>(sets.find(i))]++;
    const int largest_u =
        *std::max_element(cs.cardinalities->begin(), cs.cardinalities->end());
    for (int i = 0; i < s.n; ++i) {
      if (component_size[static_cast<size_t>(i)] > largest_u) {
        report.warnings.push_back("must-link closure component of size " +
                                  std::to_string(component_size[static_cast<size_t>(i)]) +
                                  " exceeds the largest cardinality target " +
                                  std::to_string(largest_u));
      }
    }
  }
  return report;
}

void validate_or_throw(const ConstraintSet& cs, const Shape& s) {
  const auto report = validate(cs, s);
  if (!report.ok()) throw ValidationError(report.errors.front());
}

double mustlink_quadratic(const PointMajorVec& x, const ConstraintSet& cs,
                          const Shape& s) {
  check_length(x, s.nk(), "mustlink_quadratic");
  double total = 0.0;
  for (const auto& [a, b] : cs.must_links)
    total += x.segment(a * s.k, s.k).dot(x.segment(b * s.k, s.k));
  return total;
}

double cannotlink_quadratic(const PointMajorVec& x, const ConstraintSet& cs,
                            const Shape& s) {
  check_length(x, s.nk(), "cannotlink_quadratic");
  double total = 0.0;
  for (const auto& [a, b] : cs.cannot_links)
    total += x.segment(a * s.k, s.k).dot(x.segment(b * s.k, s.k));
  return total;
}

Vec cardinality_residual(const PointMajorVec& x, const ConstraintSet& cs,
                         const Shape& s) {
  check_length(x, s.nk(), "cardinality_residual");
  if (!cs.cardinalities) {
    throw ValidationError("cardinality_residual: constraint set has no cardinalities");
  }
  Vec res = cluster_totals(to_cluster_major(x, s), s);
  for (int j = 0; j < s.k; ++j) res[j] -= (*cs.cardinalities)[static_cast<size_t>(j)];
  return res;
}

}  // namespace ckmeans
