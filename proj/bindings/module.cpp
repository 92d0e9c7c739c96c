#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>
#include <vector>

#include "ckmeans/admm.hpp"
#include "ckmeans/constraints.hpp"
#include "ckmeans/io.hpp"
#include "ckmeans/kmeans.hpp"
#include "ckmeans/metrics.hpp"
#include "ckmeans/oracle.hpp"

namespace py = pybind11;

namespace {

using PairList = std::vector<std::pair<int, int>>;

// Python passes points as an (n, d) array, one row per point; the core
// stores them column-wise.
ckmeans::DataMatrix to_data_matrix(const Eigen::MatrixXd& points) {
  return points.transpose();
}

ckmeans::ConstraintSet make_constraints(const std::optional<std::vector<int>>& cardinalities,
                                        const PairList& must_links,
                                        const PairList& cannot_links) {
  ckmeans::ConstraintSet cs;
  cs.cardinalities = cardinalities;
  for (const auto& [a, b] : must_links) cs.add_must_link(a, b);
  for (const auto& [a, b] : cannot_links) cs.add_cannot_link(a, b);
  return cs;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Constrained K-means solver: cardinality, must-link and "
            "cannot-link constraints handled by a single ADMM scheme.";

  py::register_exception<ckmeans::ValidationError>(m, "ValidationError",
                                                   PyExc_ValueError);
  py::register_exception<ckmeans::DimensionError>(m, "DimensionError",
                                                  PyExc_ValueError);
  py::register_exception<ckmeans::SizeError>(m, "SizeError", PyExc_ValueError);

  py::class_<ckmeans::Residuals>(m, "Residuals")
      .def_readonly("onehot", &ckmeans::Residuals::onehot)
      .def_readonly("cardinality", &ckmeans::Residuals::cardinality)
      .def_readonly("mustlink_gap", &ckmeans::Residuals::mustlink_gap)
      .def_readonly("cannotlink_value", &ckmeans::Residuals::cannotlink_value)
      .def_readonly("consensus", &ckmeans::Residuals::consensus);

  py::class_<ckmeans::SolveResult>(m, "SolveResult")
      .def_readonly("labels", &ckmeans::SolveResult::labels)
      .def_readonly("x_final", &ckmeans::SolveResult::x_final)
      .def_readonly("objective", &ckmeans::SolveResult::objective)
      .def_readonly("converged", &ckmeans::SolveResult::converged)
      .def_readonly("iterations", &ckmeans::SolveResult::iterations)
      .def_readonly("residuals", &ckmeans::SolveResult::residuals)
      .def_readonly("trace", &ckmeans::SolveResult::trace);

  py::class_<ckmeans::KmeansResult>(m, "KmeansResult")
      .def_readonly("labels", &ckmeans::KmeansResult::labels)
      .def_readonly("centroids", &ckmeans::KmeansResult::centroids)
      .def_readonly("objective", &ckmeans::KmeansResult::objective)
      .def_readonly("iterations", &ckmeans::KmeansResult::iterations);

  py::class_<ckmeans::OracleResult>(m, "OracleResult")
      .def_readonly("best_labels", &ckmeans::OracleResult::best_labels)
      .def_readonly("best_objective", &ckmeans::OracleResult::best_objective)
      .def_readonly("feasible_count", &ckmeans::OracleResult::feasible_count)
      .def_readonly("optimal_count", &ckmeans::OracleResult::optimal_count)
      .def_readonly("feasible", &ckmeans::OracleResult::feasible);

  m.def(
      "solve",
      [](const Eigen::MatrixXd& points, int k,
         const std::optional<std::vector<int>>& cardinalities,
         const PairList& must_links, const PairList& cannot_links, double rho,
         std::uint64_t seed, int max_iters, double cg_tol) {
        ckmeans::SolverConfig cfg;
        cfg.rho = rho;
        cfg.seed = seed;
        cfg.max_outer_iters = max_iters;
        cfg.cg_tol = cg_tol;
        return ckmeans::run(to_data_matrix(points), k,
                            make_constraints(cardinalities, must_links, cannot_links),
                            cfg);
      },
      py::arg("points"), py::arg("k"), py::arg("cardinalities") = std::nullopt,
      py::arg("must_links") = PairList{}, py::arg("cannot_links") = PairList{},
      py::arg("rho") = 0.1, py::arg("seed") = 0, py::arg("max_iters") = 2000,
      py::arg("cg_tol") = 1e-8,
      "Constrained solve of an (n, d) point array into k clusters.");

  m.def(
      "lloyd",
      [](const Eigen::MatrixXd& points, int k, std::uint64_t seed, int max_iters) {
        return ckmeans::lloyd(to_data_matrix(points), k, seed, max_iters);
      },
      py::arg("points"), py::arg("k"), py::arg("seed") = 0,
      py::arg("max_iters") = 100, "Plain K-means (warm-start quality reference).");

  m.def(
      "brute_force",
      [](const Eigen::MatrixXd& points, int k,
         const std::optional<std::vector<int>>& cardinalities,
         const PairList& must_links, const PairList& cannot_links,
         std::int64_t limit) {
        return ckmeans::brute_force_solve(
            to_data_matrix(points), k,
            make_constraints(cardinalities, must_links, cannot_links), limit);
      },
      py::arg("points"), py::arg("k"), py::arg("cardinalities") = std::nullopt,
      py::arg("must_links") = PairList{}, py::arg("cannot_links") = PairList{},
      py::arg("limit") = 10'000'000,
      "Exhaustive optimum over all k**n assignments (tiny instances only).");

  m.def(
      "gen_blobs",
      [](int k, int per_cluster, int d, double spread, double separation,
         std::uint64_t seed) {
        auto blobs = ckmeans::gen_blobs(k, per_cluster, d, spread, separation, seed);
        const Eigen::MatrixXd points = blobs.points.transpose();
        return py::make_tuple(points, blobs.labels);
      },
      py::arg("k"), py::arg("per_cluster"), py::arg("d"), py::arg("spread") = 0.1,
      py::arg("separation") = 3.0, py::arg("seed") = 0,
      "Synthetic Gaussian blobs; returns (points, true_labels).");

  m.def("nmi", &ckmeans::metric_nmi, py::arg("labels_a"), py::arg("labels_b"),
        "Normalized mutual information (arithmetic-mean normalization).");

  m.def("accuracy", &ckmeans::metric_accuracy, py::arg("labels_pred"),
        py::arg("labels_true"), py::arg("k"),
        "Clustering accuracy under the best cluster-to-class matching.");

  m.def(
      "validate_constraints",
      [](int n, int k, const std::optional<std::vector<int>>& cardinalities,
         const PairList& must_links, const PairList& cannot_links) {
        const auto report = ckmeans::validate(
            make_constraints(cardinalities, must_links, cannot_links),
            ckmeans::Shape{n, k, 1});
        return py::make_tuple(report.errors, report.warnings);
      },
      py::arg("n"), py::arg("k"), py::arg("cardinalities") = std::nullopt,
      py::arg("must_links") = PairList{}, py::arg("cannot_links") = PairList{},
      "Returns (errors, warnings) for a constraint set.");
}
