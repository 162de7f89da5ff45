#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "rbci/assignment_space.hpp"
#include "rbci/errors.hpp"
#include "rbci/inversion.hpp"
#include "rbci/oracle.hpp"
#include "rbci/simulation.hpp"
#include "rbci/statistics.hpp"

namespace py = pybind11;
using namespace rbci;

namespace {

using IntVector = std::vector<std::uint8_t>;
using RealVector = std::vector<double>;

py::list rows_of(const ReferenceSet& refset) {
  py::list out;
  for (std::size_t i = 0; i < refset.cardinality(); ++i) {
    const auto row = refset[i];
    out.append(IntVector(row.begin(), row.end()));
  }
  return out;
}

PValueStepFunction p_function(const IntVector& z, const RealVector& y, const ReferenceSet& refset,
                              const std::string& statistic, const std::string& side) {
  const ImputedStatistics stats(z, y, refset, parse_statistic(statistic));
  return recover_p_function(stats, parse_side(side), collect_jumps(stats));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact randomization-based confidence intervals (C++ core)";

  py::register_exception<Error>(m, "RbciError", PyExc_ValueError);

  py::class_<ReferenceSet>(m, "ReferenceSet")
      .def_property_readonly("cardinality", &ReferenceSet::cardinality)
      .def_property_readonly("units", &ReferenceSet::units)
      .def_property_readonly("treated", &ReferenceSet::treated)
      .def_property_readonly("mode", [](const ReferenceSet& r) { return to_string(r.mode()); })
      .def_property_readonly("seed", &ReferenceSet::seed)
      .def_property_readonly("generator", &ReferenceSet::generator)
      .def_property_readonly("assignments", &rows_of)
      .def("contains", [](const ReferenceSet& r, const IntVector& z) { return r.contains(z); })
      .def("__len__", &ReferenceSet::cardinality);

  py::class_<PValue>(m, "PValue")
      .def_readonly("count", &PValue::count)
      .def_readonly("denominator", &PValue::denominator)
      .def_property_readonly("value", &PValue::value)
      .def("__float__", &PValue::value)
      .def("__eq__", [](const PValue& a, const PValue& b) { return a == b; })
      .def("__repr__", [](const PValue& p) {
        return "PValue(" + std::to_string(p.count) + "/" + std::to_string(p.denominator) + ")";
      });

  py::class_<TDecomposition>(m, "TDecomposition")
      .def_readonly("a0", &TDecomposition::a0)
      .def_readonly("a1", &TDecomposition::a1)
      .def_readonly("b0", &TDecomposition::b0)
      .def_readonly("b1", &TDecomposition::b1)
      .def_readonly("b2", &TDecomposition::b2)
      .def("t_at", &TDecomposition::t_at, py::arg("theta"));

  py::class_<JumpPoint>(m, "JumpPoint")
      .def_readonly("theta", &JumpPoint::theta)
      .def_readonly("direction", &JumpPoint::direction)
      .def("__repr__", [](const JumpPoint& j) {
        return "JumpPoint(theta=" + std::to_string(j.theta) + ", direction=" +
               std::to_string(j.direction) + ")";
      });

  py::class_<PValueStepFunction>(m, "PValueStepFunction")
      .def_property_readonly("side", [](const PValueStepFunction& f) { return to_string(f.side()); })
      .def_property_readonly("denominator", &PValueStepFunction::denominator)
      .def_property_readonly("jumps", &PValueStepFunction::jumps)
      .def_property_readonly("base_theta", &PValueStepFunction::base_theta)
      .def_property_readonly("interval_values",
                             [](const PValueStepFunction& f) {
                               std::vector<PValue> out;
                               for (std::size_t k = 0; k <= f.jump_count(); ++k)
                                 out.push_back(f.interval_value(k));
                               return out;
                             })
      .def("__call__", &PValueStepFunction::at, py::arg("theta"));

  py::class_<ConfidenceInterval>(m, "ConfidenceInterval")
      .def_readonly("lower", &ConfidenceInterval::lower)
      .def_readonly("upper", &ConfidenceInterval::upper)
      .def_readonly("alpha", &ConfidenceInterval::alpha)
      .def_property_readonly("alternative",
                             [](const ConfidenceInterval& c) { return to_string(c.alternative); })
      .def_property_readonly("jump_count",
                             [](const ConfidenceInterval& c) { return c.diagnostics.jump_count; })
      .def_property_readonly("denominator",
                             [](const ConfidenceInterval& c) { return c.diagnostics.denominator; })
      .def_property_readonly("p_below_lower",
                             [](const ConfidenceInterval& c) { return c.diagnostics.p_below_lower; })
      .def_property_readonly("p_above_upper",
                             [](const ConfidenceInterval& c) { return c.diagnostics.p_above_upper; })
      .def("__contains__", &ConfidenceInterval::contains)
      .def("__repr__", [](const ConfidenceInterval& c) {
        return "ConfidenceInterval(" + std::to_string(c.lower) + ", " + std::to_string(c.upper) + ")";
      });

  py::class_<SimulationReport>(m, "SimulationReport")
      .def_readonly("n", &SimulationReport::n)
      .def_readonly("n_fisher", &SimulationReport::n_fisher)
      .def_readonly("n_rep", &SimulationReport::n_rep)
      .def_readonly("coverage", &SimulationReport::coverage)
      .def_readonly("type1_error", &SimulationReport::type1_error)
      .def_readonly("covered", &SimulationReport::covered)
      .def_readonly("rejected", &SimulationReport::rejected)
      .def_readonly("empty_intervals", &SimulationReport::empty_intervals)
      .def_readonly("mean_seconds_pvalue", &SimulationReport::mean_seconds_pvalue)
      .def_readonly("mean_seconds_rbci", &SimulationReport::mean_seconds_rbci)
      .def("to_json", [](const SimulationReport& r) { return to_json(r).dump(); });

  m.def("enumerate_cre", &enumerate_cre, py::arg("n"), py::arg("n1"),
        py::arg("cap") = kDefaultEnumerationCap);
  m.def("sample_cre",
        [](std::size_t n, std::size_t n1, std::size_t draws, std::uint64_t seed, const IntVector& z) {
          return sample_cre(n, n1, draws, seed, z);
        },
        py::arg("n"), py::arg("n1"), py::arg("draws"), py::arg("seed"), py::arg("observed"));

  m.def("difference_in_means",
        [](const IntVector& z, const RealVector& a) { return difference_in_means(z, a); },
        py::arg("z"), py::arg("a"));
  m.def("pooled_bilinear_variance",
        [](const IntVector& z, const RealVector& a, const RealVector& b) {
          return pooled_bilinear_variance(z, a, b);
        },
        py::arg("z"), py::arg("a"), py::arg("b"));
  m.def("studentized_t", [](const IntVector& z, const RealVector& a) { return studentized_t(z, a); },
        py::arg("z"), py::arg("a"));
  m.def("t_decomposition",
        [](const IntVector& z_pi, const RealVector& y, const RealVector& delta) {
          return t_decomposition(z_pi, y, delta);
        },
        py::arg("z_pi"), py::arg("y"), py::arg("delta"));

  m.def("solve_jumps_dim",
        [](const IntVector& z, const RealVector& y, const IntVector& z_pi) {
          return solve_jumps_dim(z, y, z_pi);
        },
        py::arg("z"), py::arg("y"), py::arg("z_pi"));
  m.def("solve_jumps_t",
        [](const IntVector& z, const RealVector& y, const IntVector& z_pi) {
          return solve_jumps_t(z, y, z_pi);
        },
        py::arg("z"), py::arg("y"), py::arg("z_pi"));
  m.def("classify_jump",
        [](const IntVector& z, const RealVector& y, const IntVector& z_pi, double theta, double eps,
           const std::string& statistic) {
          return classify_jump(z, y, z_pi, theta, eps, parse_statistic(statistic));
        },
        py::arg("z"), py::arg("y"), py::arg("z_pi"), py::arg("theta"), py::arg("eps"),
        py::arg("statistic") = "t");

  m.def("p_function", &p_function, py::arg("z"), py::arg("y"), py::arg("refset"),
        py::arg("statistic") = "t", py::arg("side") = "greater");
  m.def("confidence_interval",
        [](const IntVector& z, const RealVector& y, const ReferenceSet& refset,
           const std::string& statistic, double alpha, const std::string& alternative) {
          return confidence_interval(z, y, refset, parse_statistic(statistic), alpha,
                                     parse_alternative(alternative));
        },
        py::arg("z"), py::arg("y"), py::arg("refset"), py::arg("statistic") = "t",
        py::arg("alpha") = 0.05, py::arg("alternative") = "two-sided");
  m.def("p_value",
        [](const IntVector& z, const RealVector& y, const ReferenceSet& refset,
           const std::string& statistic, double theta, const std::string& alternative) {
          return p_value(z, y, refset, parse_statistic(statistic),
                         {theta, parse_alternative(alternative)});
        },
        py::arg("z"), py::arg("y"), py::arg("refset"), py::arg("statistic") = "t",
        py::arg("theta") = 0.0, py::arg("alternative") = "two-sided");
  m.def("oracle_p",
        [](const IntVector& z, const RealVector& y, const ReferenceSet& refset,
           const std::string& statistic, double theta, const std::string& side) {
          return oracle::oracle_p(z, y, refset, parse_statistic(statistic), theta, parse_side(side));
        },
        py::arg("z"), py::arg("y"), py::arg("refset"), py::arg("statistic") = "t",
        py::arg("theta") = 0.0, py::arg("side") = "greater");

  m.def("example1_table", [] {
    const ScienceTable t = dgp_example1();
    return py::make_tuple(t.y0, t.y1);
  });
  m.def("example1_assignment", &example1_assignment);
  m.def("exact_sweep_example1",
        [](double alpha, const std::string& alternative, const std::string& statistic) {
          return exact_sweep_example1(alpha, parse_alternative(alternative), parse_statistic(statistic));
        },
        py::arg("alpha") = 0.05, py::arg("alternative") = "two-sided", py::arg("statistic") = "t");
  m.def("run_replications",
        [](std::size_t n, std::size_t n_fisher, std::size_t n_rep, double alpha,
           const std::string& alternative, const std::string& statistic, std::uint64_t seed,
           unsigned threads) {
          SimulationConfig c;
          c.n = n;
          c.n1 = n / 2;
          c.n_fisher = n_fisher;
          c.n_rep = n_rep;
          c.alpha = alpha;
          c.alternative = parse_alternative(alternative);
          c.statistic = parse_statistic(statistic);
          c.seed = seed;
          c.threads = threads;
          py::gil_scoped_release release;
          return run_replications(c);
        },
        py::arg("n") = 100, py::arg("n_fisher") = 10'000, py::arg("n_rep") = 1'000,
        py::arg("alpha") = 0.05, py::arg("alternative") = "two-sided", py::arg("statistic") = "t",
        py::arg("seed") = 0, py::arg("threads") = 0);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
