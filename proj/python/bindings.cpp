// Copyright 2026 The mkpwc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "mkpwc/bench.hpp"
#include "mkpwc/coding.hpp"
#include "mkpwc/ea.hpp"
#include "mkpwc/init.hpp"
#include "mkpwc/instance.hpp"
#include "mkpwc/lp.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace mkpwc;

namespace {

OrlibLayout layout_of(const std::string& name) {
  if (name == "multi") return OrlibLayout::multi;
  if (name == "single") return OrlibLayout::single;
  throw py::value_error("layout must be 'multi' or 'single'");
}

MkpInstance make_instance(std::vector<double> profits,
                          const std::vector<std::vector<double>>& consumption,
                          std::vector<double> capacities, std::string name,
                          std::optional<double> known_best) {
  if (consumption.size() != capacities.size()) {
    throw py::value_error("consumption needs one row per capacity");
  }
  std::vector<double> flat;
  for (const auto& row : consumption) {
    if (row.size() != profits.size()) throw py::value_error("consumption rows need n entries");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return MkpInstance(std::move(name), std::move(profits), std::move(flat),
                     std::move(capacities), known_best);
}

std::vector<std::vector<double>> consumption_rows(const MkpInstance& inst) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < inst.constraints(); ++i) {
    const auto row = inst.constraint_row(i);
    rows.emplace_back(row.begin(), row.end());
  }
  return rows;
}

std::vector<int> as_ints(const std::vector<std::uint8_t>& x) { return {x.begin(), x.end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = R"pbdoc(
      Weight-coded evolutionary algorithms for the multidimensional knapsack
      problem: instance I/O, the bounded-variable LP solver, the first-fit
      decoder, and the WCEA / IWCEA engines.
  )pbdoc";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<lp::LpError>(m, "LpError", PyExc_ValueError);

  py::enum_<Algorithm>(m, "Algorithm")
      .value("wcea", Algorithm::wcea)
      .value("iwcea", Algorithm::iwcea);

  py::class_<MkpInstance>(m, "MkpInstance")
      .def(py::init(&make_instance), py::arg("profits"), py::arg("consumption"),
           py::arg("capacities"), py::arg("name") = "", py::arg("known_best") = py::none())
      .def_property_readonly("n", &MkpInstance::items)
      .def_property_readonly("m", &MkpInstance::constraints)
      .def_property_readonly("name", &MkpInstance::name)
      .def_property_readonly("known_best", &MkpInstance::known_best)
      .def_property_readonly("profits", [](const MkpInstance& i) {
        return std::vector<double>(i.profits().begin(), i.profits().end());
      })
      .def_property_readonly("capacities", [](const MkpInstance& i) {
        return std::vector<double>(i.capacities().begin(), i.capacities().end());
      })
      .def_property_readonly("consumption", &consumption_rows)
      .def("__eq__", [](const MkpInstance& a, const MkpInstance& b) { return a == b; })
      .def("__repr__", [](const MkpInstance& i) {
        return "<MkpInstance '" + i.name() + "' n=" + std::to_string(i.items()) +
               " m=" + std::to_string(i.constraints()) + ">";
      });

  m.def("parse_orlib",
        [](const std::string& text, const std::string& layout, const std::string& prefix) {
          return parse_orlib(text, layout_of(layout), prefix);
        },
        py::arg("text"), py::arg("layout") = "multi", py::arg("name_prefix") = "",
        "Parse OR-Library mknapcb text into a list of instances.");
  m.def("to_orlib",
        [](const std::vector<MkpInstance>& instances, const std::string& layout) {
          return to_orlib(instances, layout_of(layout));
        },
        py::arg("instances"), py::arg("layout") = "multi");

  m.def("validate",
        [](const MkpInstance& inst) {
          std::vector<std::tuple<std::string, long, long>> out;
          for (const auto& v : validate(inst).violations) {
            out.emplace_back(to_string(v.kind), static_cast<long>(v.constraint),
                             static_cast<long>(v.item));
          }
          return out;
        },
        py::arg("instance"),
        "List of (kind, constraint, item) violations; empty when well-stated.");

  m.def("generate_random",
        [](std::size_t n, std::size_t m_, double alpha, std::uint64_t seed,
           std::pair<double, double> profit_range, std::pair<double, double> consumption_range,
           bool integral, bool correlated) {
          GeneratorOptions opt;
          opt.items = n;
          opt.constraints = m_;
          opt.tightness = alpha;
          opt.seed = seed;
          opt.profit_min = profit_range.first;
          opt.profit_max = profit_range.second;
          opt.consumption_min = consumption_range.first;
          opt.consumption_max = consumption_range.second;
          opt.integral = integral;
          opt.correlated = correlated;
          return generate_random(opt);
        },
        py::arg("n"), py::arg("m"), py::arg("alpha"), py::arg("seed") = 1,
        py::arg("profit_range") = std::pair<double, double>{1.0, 1000.0},
        py::arg("consumption_range") = std::pair<double, double>{0.0, 1000.0},
        py::arg("integral") = true, py::arg("correlated") = false);

  py::class_<lp::LpSolution>(m, "LpSolution")
      .def_property_readonly("status",
                             [](const lp::LpSolution& s) { return lp::to_string(s.status); })
      .def_readonly("x", &lp::LpSolution::x)
      .def_readonly("objective", &lp::LpSolution::objective)
      .def_readonly("duals", &lp::LpSolution::duals)
      .def_readonly("reduced_costs", &lp::LpSolution::reduced_costs)
      .def_readonly("iterations", &lp::LpSolution::iterations);

  m.def("relax_lp", [](const MkpInstance& inst) { return lp::solve(lp::relax_mkp(inst)); },
        py::arg("instance"), "Solve the LP relaxation.");
  m.def("hyperplane_lp",
        [](const MkpInstance& inst, double k) {
          return lp::solve(lp::with_hyperplane(lp::relax_mkp(inst), k));
        },
        py::arg("instance"), py::arg("k"), "Solve the relaxation with sum(x) == k.");

  py::class_<InitBounds>(m, "InitBounds")
      .def_readonly("z", &InitBounds::z)
      .def_readonly("k_min", &InitBounds::k_min)
      .def_readonly("k_max", &InitBounds::k_max)
      .def_property_readonly("status", [](const InitBounds& b) { return to_string(b.status); });
  m.def("compute_bounds", &compute_bounds, py::arg("instance"), py::arg("z"));
  m.def("greedy_lower_bound",
        [](const MkpInstance& inst) {
          const GreedyBound g = greedy_lower_bound(inst);
          return py::make_tuple(g.z, as_ints(g.solution.to_vector()));
        },
        py::arg("instance"), "Greedy pseudo-utility bound: (z, x).");

  m.def("decode",
        [](const MkpInstance& inst, std::vector<double> weights, Algorithm algo,
           std::optional<std::vector<double>> multipliers) {
          std::optional<SurrogateMultipliers> a;
          if (multipliers) a = SurrogateMultipliers{*multipliers};
          const DecodeOrder order =
              algo == Algorithm::wcea ? DecodeOrder::pseudo_utility : DecodeOrder::biased_profit;
          const Phenotype ph = evaluate(inst, Genotype{std::move(weights)}, order, a);
          return py::make_tuple(as_ints(ph.to_vector()), ph.fitness());
        },
        py::arg("instance"), py::arg("weights"), py::arg("algorithm") = Algorithm::iwcea,
        py::arg("multipliers") = py::none(),
        "Bias and first-fit decode a weight vector: (x, fitness).");

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("instance", &RunResult::instance)
      .def_readonly("algorithm", &RunResult::algorithm)
      .def_readonly("seed", &RunResult::seed)
      .def_readonly("best", &RunResult::best)
      .def_readonly("lp_bound", &RunResult::lp_bound)
      .def_readonly("gap", &RunResult::gap)
      .def_readonly("evaluations", &RunResult::evaluations)
      .def_readonly("accepted", &RunResult::accepted)
      .def_readonly("rejected", &RunResult::rejected)
      .def_readonly("wall_ms", &RunResult::wall_ms)
      .def_property_readonly("converged",
                             [](const RunResult& r) { return r.status == RunStatus::converged; })
      .def_property_readonly("best_x", [](const RunResult& r) { return as_ints(r.best_x); });

  m.def("solve",
        [](const MkpInstance& inst, Algorithm algo, std::size_t runs, std::uint64_t seed,
           std::size_t pop_size, std::uint64_t max_evals, double gamma, std::size_t threads) {
          py::gil_scoped_release release;
          const PreparedInstance prepared = PreparedInstance::prepare(inst);
          EaConfig cfg = algo == Algorithm::wcea ? EaConfig::wcea(inst, gamma) : EaConfig::iwcea(inst);
          cfg.pop_size = pop_size;
          cfg.max_evals = max_evals;
          cfg.shrink_population = true;
          return run_many(prepared, cfg, runs, seed, threads);
        },
        py::arg("instance"), py::arg("algorithm") = Algorithm::iwcea, py::arg("runs") = 1,
        py::arg("seed") = 1, py::arg("pop_size") = 100, py::arg("max_evals") = 1'000'000,
        py::arg("gamma") = 0.05, py::arg("threads") = 1,
        "Run the EA `runs` times with seeds seed, seed+1, ...");

  m.def("aggregate",
        [](const std::vector<RunResult>& results, std::optional<double> known_best) {
          const AggregateStats s = aggregate(results, known_best);
          py::dict d;
          d["instance"] = s.instance;
          d["algorithm"] = to_string(s.algorithm);
          d["runs"] = s.runs;
          d["mean_gap"] = s.mean_gap;
          d["std_gap"] = s.std_gap;
          d["best"] = s.best;
          d["known_best"] = s.known_best;
          d["cmp"] = to_string(s.cmp);
          return d;
        },
        py::arg("results"), py::arg("known_best") = py::none());

  py::class_<BruteForceResult>(m, "BruteForceResult")
      .def_readonly("fitness", &BruteForceResult::fitness)
      .def_property_readonly("x", [](const BruteForceResult& r) { return as_ints(r.x); });
  m.def("brute_force_opt", &brute_force_opt, py::arg("instance"));
  m.def("gap", &gap, py::arg("best"), py::arg("lp_bound"));

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
