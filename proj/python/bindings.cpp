#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <tuple>
#include <utility>

#include "ordkm/bench.hpp"
#include "ordkm/centrum.hpp"
#include "ordkm/instance.hpp"
#include "ordkm/lp.hpp"
#include "ordkm/oracle.hpp"
#include "ordkm/ordered.hpp"
#include "ordkm/ordered_cost.hpp"
#include "ordkm/proxy.hpp"

namespace py = pybind11;
using namespace ordkm;

PYBIND11_MODULE(_core, m) {
  m.doc() = "ordered k-median / l-centrum solvers";

  py::register_exception<UsageError>(m, "UsageError");
  py::register_exception<CertificateError>(m, "CertificateError");
  py::register_exception<ResourceCapError>(m, "ResourceCapError");

  py::class_<MetricInstance>(m, "MetricInstance")
      .def(py::init<>())
      .def_readwrite("n", &MetricInstance::n)
      .def_readwrite("k", &MetricInstance::k)
      .def_readwrite("dist", &MetricInstance::dist)
      .def("__call__", &MetricInstance::operator(), py::arg("i"), py::arg("j"))
      .def("max_distance", &MetricInstance::max_distance)
      .def("min_positive_distance", &MetricInstance::min_positive_distance)
      .def("distinct_point_count", &MetricInstance::distinct_point_count);

  py::class_<Solution>(m, "Solution")
      .def_readonly("centers", &Solution::centers)
      .def_readonly("assign", &Solution::assign)
      .def_readonly("cost", &Solution::cost);

  py::class_<CentrumDiag>(m, "CentrumDiag")
      .def_readonly("trivial", &CentrumDiag::trivial)
      .def_readonly("exact_k", &CentrumDiag::exact_k)
      .def_readonly("t2_shortcut", &CentrumDiag::t2_shortcut)
      .def_readonly("Bbar", &CentrumDiag::Bbar)
      .def_readonly("a", &CentrumDiag::a)
      .def_readonly("b", &CentrumDiag::b)
      .def_readonly("cost", &CentrumDiag::cost);

  py::class_<LpReduceDiag>(m, "LpReduceDiag")
      .def_readonly("trivial", &LpReduceDiag::trivial)
      .def_readonly("small_core", &LpReduceDiag::small_core)
      .def_readonly("Bbar", &LpReduceDiag::Bbar)
      .def_readonly("lp_value", &LpReduceDiag::lp_value)
      .def_readonly("opt_prime", &LpReduceDiag::opt_prime)
      .def_readonly("kmed_cost", &LpReduceDiag::kmed_cost)
      .def_readonly("core_size", &LpReduceDiag::core_size)
      .def_readonly("cost", &LpReduceDiag::cost);

  py::class_<OrderedDiag>(m, "OrderedDiag")
      .def_readonly("trivial", &OrderedDiag::trivial)
      .def_readonly("guess_count", &OrderedDiag::guess_count)
      .def_readonly("best_guess", &OrderedDiag::best_guess)
      .def_readonly("best_M", &OrderedDiag::best_M)
      .def_readonly("cost", &OrderedDiag::cost);

  m.def("gen_random_metric", &gen_random_metric, py::arg("n"), py::arg("k"),
        py::arg("seed"), py::arg("scale") = 1.0);
  m.def("metric_from_points", &metric_from_points, py::arg("points"), py::arg("k"));
  m.def("validate_metric", [](const MetricInstance& inst) {
    ValidationReport rep = validate_metric(inst);
    return py::make_tuple(rep.ok, rep.message);
  });

  m.def("ordered_cost", &ordered_cost, py::arg("w"), py::arg("c"));
  m.def("truncate_weights", &truncate_weights, py::arg("w"), py::arg("eps"));
  m.def("centrum_weights", &centrum_weights, py::arg("n"), py::arg("ell"));

  // Guarded functions return plain C++ tuples; pybind converts them to Python
  // only after the GIL is reacquired.
  m.def(
      "brute_force_ordered",
      [](const MetricInstance& inst, const std::vector<double>& w, std::size_t cap) {
        BruteForceResult r = brute_force_ordered(inst, w, cap);
        return std::pair<Solution, double>(std::move(r.sol), r.opt);
      },
      py::arg("inst"), py::arg("w"), py::arg("cap") = std::size_t(1000000),
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "solve_centrum_pd",
      [](const MetricInstance& inst, int ell, double eps) {
        CentrumDiag diag;
        Solution sol = solve_centrum_pd(inst, ell, eps, &diag);
        return std::pair<Solution, CentrumDiag>(std::move(sol), diag);
      },
      py::arg("inst"), py::arg("ell"), py::arg("eps"),
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "solve_centrum_lp_reduce",
      [](const MetricInstance& inst, int ell, double eps, bool brute_kmedian) {
        LpReduceDiag diag;
        KMedSolver kmed = brute_kmedian ? KMedSolver(kmed_brute_solver)
                                        : make_kmed_pd_solver(eps);
        Solution sol = solve_centrum_lp_reduce(inst, ell, eps, kmed, &diag);
        return std::pair<Solution, LpReduceDiag>(std::move(sol), diag);
      },
      py::arg("inst"), py::arg("ell"), py::arg("eps"), py::arg("brute_kmedian") = false,
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "solve_ordered",
      [](const MetricInstance& inst, const std::vector<double>& w, double eps,
         std::int64_t guess_cap, int threads) {
        OrderedDiag diag;
        Solution sol = solve_ordered(inst, w, eps, guess_cap, threads, &diag);
        return std::pair<Solution, OrderedDiag>(std::move(sol), diag);
      },
      py::arg("inst"), py::arg("w"), py::arg("eps"),
      py::arg("guess_cap") = std::int64_t(1000000), py::arg("threads") = 1,
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "find_Bbar",
      [](const MetricInstance& inst, int ell, double eps) {
        BbarResult r = find_Bbar(inst, ell, eps);
        return std::tuple<double, double, int>(r.Bbar, r.lp.value, r.lp_solves);
      },
      py::arg("inst"), py::arg("ell"), py::arg("eps"),
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "lp_value",
      [](const MetricInstance& inst, double B, int ell) {
        ProxySpec proxy = B > 0 ? ProxySpec::truncated(B, ell) : ProxySpec::identity();
        return lp_opt_value(inst, proxy, unit_demands(inst.n));
      },
      py::arg("inst"), py::arg("B") = 0.0, py::arg("ell") = 1,
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "run_bench",
      [](const std::string& suite, int trials, std::uint64_t seed, int threads) {
        BenchResult r = run_bench(suite, trials, seed, threads);
        return std::pair<std::string, int>(r.text(), r.violations);
      },
      py::arg("suite"), py::arg("trials"), py::arg("seed") = std::uint64_t(1),
      py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
}
