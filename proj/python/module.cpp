/*
 * Copyright (C) 2026 The randwave Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <functional>
#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "randwave/cli/commands.hpp"
#include "randwave/cli/config.hpp"
#include "randwave/concentration.hpp"
#include "randwave/ks.hpp"
#include "randwave/que.hpp"
#include "randwave/randmat.hpp"
#include "randwave/rng.hpp"
#include "randwave/spectral.hpp"

namespace py = pybind11;
using namespace randwave;

namespace {

TailSide parse_side(const std::string& side) {
  if (side == "upper") return TailSide::upper;
  if (side == "lower") return TailSide::lower;
  throw ValidationError("side must be \"upper\" or \"lower\"");
}

void bind_randmat(py::module_& m) {
  py::class_<Rng>(m, "Rng", "Splittable counter-based generator.")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("stream") = 0)
      .def("split", &Rng::split, py::arg("stream_index"))
      .def("next_u64", [](Rng& rng) { return rng(); })
      .def("uniform_open", &Rng::uniform_open)
      .def("normal", &Rng::normal);

  py::class_<HaarUnitary>(m, "HaarUnitary")
      .def(py::init<ComplexMatrix>(), py::arg("entries"))
      .def_property_readonly("dim", &HaarUnitary::dim)
      .def_property_readonly("entries", &HaarUnitary::entries)
      .def("unitarity_residual", &HaarUnitary::unitarity_residual);

  m.def("sample_haar_unitary", &sample_haar_unitary, py::arg("d"), py::arg("rng"));
  m.def("sample_sphere_vector", &sample_sphere_vector, py::arg("d"), py::arg("rng"));
  m.def("sample_exponentials", &sample_exponentials, py::arg("d"), py::arg("rng"));
  m.def("sample_phases", &sample_phases, py::arg("d"), py::arg("rng"));
  m.def(
      "decompose_sphere_vector",
      [](const std::vector<Complex>& phases, const std::vector<double>& exponentials) {
        return decompose_sphere_vector(phases, exponentials);
      },
      py::arg("phases"), py::arg("exponentials"));
  m.def(
      "ks_two_sample",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        const KsResult r = ks_two_sample(a, b);
        return py::make_tuple(r.statistic, r.p_value);
      },
      py::arg("a"), py::arg("b"), "Returns (statistic, p_value).");
}

void bind_concentration(py::module_& m) {
  py::class_<MonteCarloEstimate>(m, "MonteCarloEstimate")
      .def_readonly("estimate", &MonteCarloEstimate::estimate)
      .def_readonly("standard_error", &MonteCarloEstimate::standard_error)
      .def_readonly("trials", &MonteCarloEstimate::trials);

  py::class_<TailBoundReport>(m, "TailBoundReport")
      .def_readonly("delta", &TailBoundReport::delta)
      .def_readonly("dim", &TailBoundReport::dim)
      .def_readonly("bound_quadratic", &TailBoundReport::bound_quadratic)
      .def_readonly("bound_optimized", &TailBoundReport::bound_optimized)
      .def_readonly("exact_tail", &TailBoundReport::exact_tail)
      .def_readonly("empirical", &TailBoundReport::empirical);

  m.def("chernoff_upper_exponential_sum", &chernoff_upper_exponential_sum, py::arg("delta"),
        py::arg("d"));
  m.def("chernoff_lower_exponential_sum", &chernoff_lower_exponential_sum, py::arg("delta"),
        py::arg("d"));
  m.def(
      "gamma_tail_exact",
      [](Index d, double threshold, const std::string& side) {
        return gamma_tail_exact(d, threshold, parse_side(side));
      },
      py::arg("d"), py::arg("threshold"), py::arg("side") = "upper");
  m.def(
      "lln_decompose",
      [](const std::vector<double>& e, double delta) {
        const LlnDecomposition r = lln_decompose(e, delta);
        return py::make_tuple(r.theta, r.event);
      },
      py::arg("exponentials"), py::arg("delta"), "Returns (theta, event).");
  m.def(
      "large_deviation_bound",
      [](std::vector<double> eta, double alpha) {
        return large_deviation_bound(LargeDeviationParams::from_recentered(std::move(eta)), alpha);
      },
      py::arg("recentered_eigs"), py::arg("alpha"));
  m.def(
      "quadratic_form",
      [](const std::vector<double>& eigs, const HaarUnitary& u, Index column) {
        return quadratic_form(eigs, u, column);
      },
      py::arg("eigs"), py::arg("unitary"), py::arg("column"));
  m.def(
      "empirical_tail",
      [](const std::function<double(Rng&)>& sampler, double threshold, std::size_t trials,
         const Rng& rng) { return empirical_tail(sampler, threshold, trials, rng, 1); },
      py::arg("sampler"), py::arg("threshold"), py::arg("trials"), py::arg("rng"),
      "Single-threaded: the sampler is a Python callable.");
}

void bind_spectral(py::module_& m) {
  py::class_<SpectralWindow>(m, "SpectralWindow")
      .def(py::init([](double lower, double upper, Index index) {
             return SpectralWindow{lower, upper, index};
           }),
           py::arg("lower"), py::arg("upper"), py::arg("index") = 0)
      .def_static("unit", &SpectralWindow::unit, py::arg("k"), py::arg("width") = 1.0)
      .def_readonly("lower", &SpectralWindow::lower)
      .def_readonly("upper", &SpectralWindow::upper)
      .def_readonly("index", &SpectralWindow::index);

  py::class_<SpectralBlock>(m, "SpectralBlock")
      .def_readonly("window", &SpectralBlock::window)
      .def_readonly("torus_dim", &SpectralBlock::torus_dim)
      .def_property_readonly("dim", &SpectralBlock::dim)
      .def_property_readonly("modes", [](const SpectralBlock& b) {
        std::vector<Frequency> out;
        for (const auto& mode : b.modes) out.push_back(mode.coords);
        return out;
      });

  m.def("enumerate_block", &enumerate_block, py::arg("window"), py::arg("torus_dim"));
  m.def(
      "weyl_count",
      [](double lambda, int n) {
        const WeylCount w = weyl_count(lambda, n);
        return py::make_tuple(w.count, w.leading_term);
      },
      py::arg("lam"), py::arg("torus_dim"), "Returns (count, leading_term).");

  py::class_<Observable>(m, "Observable")
      .def(py::init([](int n, const std::vector<std::pair<Frequency, Complex>>& terms) {
             std::vector<FourierTerm> list;
             for (const auto& [q, a] : terms) list.push_back({q, a});
             return Observable(n, list);
           }),
           py::arg("torus_dim"), py::arg("terms"))
      .def_static("constant", &Observable::constant, py::arg("torus_dim"), py::arg("value"))
      .def_static("cosine", &Observable::cosine, py::arg("torus_dim"), py::arg("axis") = 0)
      .def_property_readonly("torus_dim", &Observable::torus_dim)
      .def("coefficient", &Observable::coefficient, py::arg("q"))
      .def("operator_norm_bound", &Observable::operator_norm_bound);
  m.def("symbol_average", &symbol_average, py::arg("observable"));

  py::class_<ProjectedObservable>(m, "ProjectedObservable")
      .def(py::init<const Observable&, SpectralBlock>(), py::arg("observable"), py::arg("block"))
      .def_property_readonly("dim", &ProjectedObservable::dim)
      .def_property_readonly("matrix", &ProjectedObservable::matrix)
      .def_property_readonly("eigs", &ProjectedObservable::eigs)
      .def_property_readonly("recentered", &ProjectedObservable::recentered)
      .def_property_readonly("mean", &ProjectedObservable::mean)
      .def_property_readonly("second_moment", &ProjectedObservable::second_moment)
      .def_property_readonly("symbol_average", &ProjectedObservable::symbol_average)
      .def_property_readonly("norm_bound", &ProjectedObservable::norm_bound);

  m.def("projected_eigenvalues", &projected_eigenvalues, py::arg("matrix"));
  m.def("szego_moment", &szego_moment, py::arg("projected"), py::arg("m"));
  m.def("trivial_bound_check", &trivial_bound_check, py::arg("projected"));
}

void bind_que(py::module_& m) {
  m.def("matrix_coefficient", &matrix_coefficient, py::arg("projected"), py::arg("v"),
        py::arg("i"), py::arg("j"));
  m.def("direct_matrix_coefficient", &direct_matrix_coefficient, py::arg("projected"),
        py::arg("v"), py::arg("i"), py::arg("j"));
  m.def("recentered_diagonal", &recentered_diagonal, py::arg("projected"), py::arg("v"),
        py::arg("j"));
  m.def("que_threshold", &que_threshold, py::arg("d"), py::arg("C"));

  py::class_<DeviationRecord>(m, "DeviationRecord")
      .def_readonly("block_index", &DeviationRecord::block_index)
      .def_readonly("dim", &DeviationRecord::dim)
      .def_readonly("symbol_avg", &DeviationRecord::symbol_avg)
      .def_readonly("second_moment", &DeviationRecord::second_moment)
      .def_readonly("alpha", &DeviationRecord::alpha)
      .def_readonly("trial_count", &DeviationRecord::trial_count)
      .def_readonly("sup_deviations", &DeviationRecord::sup_deviations)
      .def_readonly("exceed_count", &DeviationRecord::exceed_count)
      .def_readonly("predicted_bound", &DeviationRecord::predicted_bound)
      .def_readonly("lln_remainder", &DeviationRecord::lln_remainder)
      .def_readonly("diagonals", &DeviationRecord::diagonals)
      .def("exceed_frequency", &DeviationRecord::exceed_frequency)
      .def("median_sup", &DeviationRecord::median_sup);

  m.def("block_deviation_experiment", &block_deviation_experiment, py::arg("projected"),
        py::arg("trials"), py::arg("C"), py::arg("rng"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "ergodic_average",
      [](const std::vector<DeviationRecord>& records, const std::vector<std::size_t>& grid) {
        std::vector<std::pair<std::size_t, double>> out;
        for (const auto& e : ergodic_average(records, grid)) out.emplace_back(e.n, e.cesaro_mean);
        return out;
      },
      py::arg("records"), py::arg("n_grid"), "Returns [(N, cesaro_mean), ...].");
  m.def(
      "summability_check",
      [](const std::vector<DeviationRecord>& records) {
        const SummabilityResult r = summability_check(records);
        return py::make_tuple(r.partial_sums, r.slope, r.verdict);
      },
      py::arg("records"), "Returns (partial_sums, slope, verdict).");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Random-wave model on the flat torus";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  bind_randmat(m);
  bind_concentration(m);
  bind_spectral(m);
  bind_que(m);

  m.def(
      "run_subcommand",
      [](const std::string& name, const std::string& config_text,
         std::optional<std::uint64_t> seed) {
        auto config = cli::parse_config(config_text);
        if (name != "report") config.seed = cli::resolve_seed(config, seed);
        std::ostringstream out, log;
        const int status = cli::run_subcommand(name, config, out, log);
        return py::make_tuple(status, out.str(), log.str());
      },
      py::arg("name"), py::arg("config_json"), py::arg("seed") = py::none(),
      "Runs a CLI subcommand in-process; returns (exit_status, stdout, log).");
}
