// Copyright 2026 The qmarkov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmarkov/casebook.hpp"
#include "qmarkov/channels.hpp"
#include "qmarkov/entropies.hpp"
#include "qmarkov/harness.hpp"
#include "qmarkov/invariance.hpp"
#include "qmarkov/quadrature.hpp"
#include "qmarkov/serialization.hpp"

namespace py = pybind11;
using namespace qmarkov;

namespace {

// Divergences go to Python as plain floats; +inf marks a support violation.
double bits(const DivergenceValue& v) { return v.value; }

py::dict closed_forms_dict(const ClosedFormReport& r) {
  py::dict values, flags;
  for (const auto& e : r.entries) values[py::str(e.key)] = e.value;
  for (const auto& [k, v] : r.flags) flags[py::str(k)] = v;
  py::dict out;
  out["experiment"] = r.experiment;
  out["values"] = values;
  out["flags"] = flags;
  return out;
}

TrialConfig make_config(Dims dims, std::size_t trials, std::uint64_t seed, std::size_t nodes,
                        bool vary_dims, std::size_t threads) {
  TrialConfig cfg;
  cfg.dims = std::move(dims);
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.quadrature_nodes = nodes;
  cfg.vary_dims = vary_dims;
  cfg.threads = threads;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_qmarkov, m) {
  m.doc() = "Approximate quantum Markov chains: states, divergences, recovery maps and checks.";

  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<DensityOperator>(m, "DensityOperator")
      .def(py::init<ComplexMatrix, Dims, Labels>(), py::arg("matrix"), py::arg("dims"), py::arg("labels"))
      .def(py::init<ComplexMatrix, Dims>(), py::arg("matrix"), py::arg("dims"))
      .def_property_readonly("matrix", &DensityOperator::matrix)
      .def_property_readonly("dims", &DensityOperator::dims)
      .def_property_readonly("labels", &DensityOperator::labels)
      .def_property_readonly("dim", &DensityOperator::dim)
      .def("purity", &DensityOperator::purity)
      .def("to_json", [](const DensityOperator& s) { return to_json(s).dump(); })
      .def_static("from_json", [](const std::string& text) { return density_from_json(Json::parse(text)); });

  py::class_<ClassicalJoint>(m, "ClassicalJoint")
      .def(py::init<std::vector<double>, Dims, Labels>(), py::arg("pmf"), py::arg("alphabets"),
           py::arg("labels"))
      .def(py::init<std::vector<double>, Dims>(), py::arg("pmf"), py::arg("alphabets"))
      .def_property_readonly("pmf", &ClassicalJoint::pmf)
      .def_property_readonly("alphabets", &ClassicalJoint::alphabets)
      .def_property_readonly("labels", &ClassicalJoint::labels)
      .def("marginal", &ClassicalJoint::marginal, py::arg("keep"));

  py::class_<QuantumChannel>(m, "QuantumChannel")
      .def(py::init<std::vector<ComplexMatrix>, Dims, Dims, Labels, Labels>(), py::arg("kraus"),
           py::arg("in_dims"), py::arg("out_dims"), py::arg("in_labels"), py::arg("out_labels"))
      .def_property_readonly("kraus", &QuantumChannel::kraus)
      .def_property_readonly("in_dims", &QuantumChannel::in_dims)
      .def_property_readonly("out_dims", &QuantumChannel::out_dims)
      .def_property_readonly("in_labels", &QuantumChannel::in_labels)
      .def_property_readonly("out_labels", &QuantumChannel::out_labels)
      .def("choi", &QuantumChannel::choi)
      .def("apply_matrix", &QuantumChannel::apply_matrix)
      .def("is_cptp", &QuantumChannel::is_cptp, py::arg("tol") = kChannelTolerance);

  py::class_<ClassicalChannel>(m, "ClassicalChannel")
      .def_property_readonly("in_alphabet", &ClassicalChannel::in_alphabet)
      .def_property_readonly("out_alphabets", &ClassicalChannel::out_alphabets)
      .def_property_readonly("out_labels", &ClassicalChannel::out_labels)
      .def("dense", [](const ClassicalChannel& c) { return Eigen::MatrixXd(c.matrix()); });

  py::class_<LambdaResult>(m, "LambdaResult")
      .def_readonly("value", &LambdaResult::value)
      .def_readonly("finite", &LambdaResult::finite)
      .def_readonly("lower", &LambdaResult::lower)
      .def_readonly("gap", &LambdaResult::gap)
      .def_readonly("witness", &LambdaResult::witness);

  py::class_<ClassicalLambdaResult>(m, "ClassicalLambdaResult")
      .def_readonly("value", &ClassicalLambdaResult::value)
      .def_readonly("finite", &ClassicalLambdaResult::finite)
      .def_readonly("witness", &ClassicalLambdaResult::witness);

  // States.
  m.def("from_classical", &from_classical);
  m.def("marginal", &marginal, py::arg("state"), py::arg("keep"));
  m.def("slater_state", &slater_state, py::arg("d"));
  m.def("random_density", py::overload_cast<const Dims&, std::uint64_t>(&random_density), py::arg("dims"),
        py::arg("seed"));
  m.def("random_classical", &random_classical, py::arg("alphabets"), py::arg("seed"));
  m.def("partial_trace",
        [](const ComplexMatrix& x, const Dims& dims, const std::vector<std::size_t>& keep) {
          return partial_trace(x, dims, keep);
        },
        py::arg("matrix"), py::arg("dims"), py::arg("keep"));

  // Entropies, in bits.
  m.def("von_neumann", &von_neumann);
  m.def("cmi", &cmi);
  m.def("relative_entropy", [](const ComplexMatrix& a, const ComplexMatrix& b) { return bits(relative_entropy(a, b)); });
  m.def("d_min", [](const ComplexMatrix& a, const ComplexMatrix& b) { return bits(d_min(a, b)); });
  m.def("d_max", [](const ComplexMatrix& a, const ComplexMatrix& b) { return bits(d_max(a, b)); });
  m.def("d_alpha",
        [](const ComplexMatrix& a, const ComplexMatrix& b, double alpha) { return bits(d_alpha(a, b, alpha)); });
  m.def("fidelity", &fidelity);
  m.def("trace_distance", &trace_distance);

  // Channels and recovery maps.
  m.def("apply", &apply, py::arg("channel"), py::arg("state"));
  m.def("compose", &compose);
  m.def("restrict_output", py::overload_cast<const QuantumChannel&, const Labels&>(&restrict_output));
  m.def("restrict_output", py::overload_cast<const ClassicalChannel&, const Labels&>(&restrict_output));
  m.def("petz_map", &petz_map, py::arg("rho_bc"));
  m.def("rotated_petz_map", &rotated_petz_map, py::arg("rho_bc"), py::arg("t"));
  m.def("averaged_rotated_petz", &averaged_rotated_petz, py::arg("rho_bc"), py::arg("nodes") = 64);
  m.def("beta0_rule", [](std::size_t n) {
    const QuadratureRule r = beta0_rule(n);
    return py::make_tuple(r.nodes, r.weights);
  });
  m.def("to_quantum", &to_quantum, py::arg("channel"), py::arg("in_label"));

  // Invariance.
  m.def("lambda_max", &lambda_max, py::arg("rho"), py::arg("channel"));
  m.def("lambda_max_classical", &lambda_max_classical, py::arg("rho"), py::arg("channel"), py::arg("on"));

  // Casebook.
  m.def("noisy_copy_joint", [](std::size_t n, double p, double q) { return noisy_copy_joint({n, p, q}); });
  m.def("noisy_copy_recovery", [](std::size_t n, double p, double q) { return noisy_copy_recovery({n, p, q}); });
  m.def("noisy_copy_closed_forms",
        [](std::size_t n, double p, double q) { return closed_forms_dict(noisy_copy_closed_forms({n, p, q})); });
  m.def("noisy_copy_enumeration",
        [](std::size_t n, double p, double q) { return closed_forms_dict(noisy_copy_enumeration({n, p, q})); });
  m.def("modular_sum_joint", [](std::size_t n, double p) { return modular_sum_joint({n, p}); });
  m.def("modular_sum_recovery", [](std::size_t n, double p) { return modular_sum_recovery({n, p}); });
  m.def("modular_sum_closed_forms", [](double alpha) { return closed_forms_dict(modular_sum_closed_forms(alpha)); });
  m.def("modular_sum_enumeration", [](std::size_t n, double p, double alpha) {
    return closed_forms_dict(modular_sum_enumeration({n, p}, alpha));
  });
  m.def("exchange_values", [](double p, double eps) {
    const TriangleValues v = exchange_values(p, eps);
    return py::make_tuple(v.d_pq, v.d_ps, v.d_sq, v.gap);
  });
  m.def("antisymmetric_report", [](std::size_t d) { return closed_forms_dict(antisymmetric_report(d)); });

  // Harness; reports come back as JSON text.
  m.def("suite_names", &suite_names);
  m.def("casebook_experiments", &casebook_experiments);
  m.def("run_suite_json",
        [](const std::string& name, Dims dims, std::size_t trials, std::uint64_t seed, std::size_t nodes,
           bool vary_dims, std::size_t threads) {
          const TrialConfig cfg = make_config(std::move(dims), trials, seed, nodes, vary_dims, threads);
          py::gil_scoped_release release;
          return run_suite(name, cfg).to_json().dump();
        },
        py::arg("name"), py::arg("dims") = Dims{2, 2, 2}, py::arg("trials") = 10, py::arg("seed") = 1,
        py::arg("nodes") = 64, py::arg("vary_dims") = false, py::arg("threads") = 0);
  m.def("run_casebook_json", [](const std::string& name) {
    py::gil_scoped_release release;
    return run_casebook(name).to_json().dump();
  });
}
