// Copyright 2026 The CorrLDP Authors
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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "corrldp/aggregation.hpp"
#include "corrldp/core.hpp"
#include "corrldp/dataset_io.hpp"
#include "corrldp/grr.hpp"
#include "corrldp/harness.hpp"
#include "corrldp/ingest.hpp"
#include "corrldp/mechanisms.hpp"
#include "corrldp/pyopt.hpp"
#include "corrldp/synth.hpp"

namespace py = pybind11;
using namespace corrldp;

namespace {

std::vector<CategoricalDomain> to_domains(const std::vector<std::uint32_t>& sizes) {
  std::vector<CategoricalDomain> domains;
  domains.reserve(sizes.size());
  for (std::uint32_t k : sizes) domains.push_back(CategoricalDomain{k});
  return domains;
}

std::vector<std::uint32_t> from_domains(const std::vector<CategoricalDomain>& domains) {
  std::vector<std::uint32_t> sizes;
  sizes.reserve(domains.size());
  for (const auto& dom : domains) sizes.push_back(dom.size);
  return sizes;
}

std::vector<std::vector<double>> channel_rows(const ChannelMatrix& channel) {
  std::vector<std::vector<double>> rows(channel.outputs,
                                        std::vector<double>(channel.inputs));
  for (std::size_t y = 0; y < channel.outputs; ++y) {
    for (std::size_t x = 0; x < channel.inputs; ++x) rows[y][x] = channel.at(y, x);
  }
  return rows;
}

PairwisePyModel py_model_from_rows(const std::vector<std::vector<double>>& rows) {
  PairwisePyModel model(rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].size() != rows.size()) {
      throw ShapeError("p_y model must be square");
    }
    for (std::size_t m = j + 1; m < rows.size(); ++m) model.set(j, m, rows[j][m]);
  }
  return model;
}

ChannelMatrix make_channel(const std::string& mechanism, double epsilon, std::size_t d,
                           std::uint32_t k, double py_fill,
                           const std::vector<std::vector<double>>& prior_rows) {
  const MechanismId mech = mechanism_from_name(mechanism);
  PairwisePyModel model(d, py_fill);
  PriorTable prior;
  if (prior_rows.empty()) {
    const auto domains = to_domains(std::vector<std::uint32_t>(d, k));
    prior = uniform_marginals(domains);
  } else {
    prior.freqs = prior_rows;
  }
  return mechanism_channel(mech, epsilon, d, k, &model, &prior);
}

}  // namespace

PYBIND11_MODULE(_corrldp, m) {
  m.doc() = "Locally private multi-attribute frequency estimation primitives";

  py::register_exception<Error>(m, "CorrLdpError");

  py::class_<RngStream>(m, "RngStream")
      .def(py::init([](std::uint64_t seed) { return RngStream(seed); }), py::arg("seed"))
      .def("next_u64", &RngStream::next_u64)
      .def("next_double", &RngStream::next_double)
      .def("uniform_int", &RngStream::uniform_int, py::arg("bound"))
      .def("bernoulli", &RngStream::bernoulli, py::arg("p"))
      .def(
          "child",
          [](const RngStream& s, std::uint64_t a, std::uint64_t b) {
            return s.child(a, b);
          },
          py::arg("a"), py::arg("b") = 0);

  py::class_<GrrParams>(m, "GrrParams")
      .def_readonly("epsilon", &GrrParams::epsilon)
      .def_readonly("k", &GrrParams::k)
      .def_readonly("p", &GrrParams::p)
      .def_readonly("q", &GrrParams::q)
      .def_readonly("delta", &GrrParams::delta);

  py::class_<Dataset>(m, "Dataset")
      .def(py::init([](const std::vector<std::uint32_t>& domain_sizes,
                       const std::vector<Record>& records) {
             Dataset data{to_domains(domain_sizes), records};
             validate_dataset(data);
             return data;
           }),
           py::arg("domain_sizes"), py::arg("records"))
      .def_property_readonly(
          "domain_sizes", [](const Dataset& d) { return from_domains(d.domains); })
      .def_readonly("records", &Dataset::records)
      .def("user_count", &Dataset::user_count)
      .def("attribute_count", &Dataset::attribute_count);

  m.def("grr_params", &grr_params, py::arg("epsilon"), py::arg("k"));
  m.def(
      "grr_perturb",
      [](std::uint32_t v, double epsilon, std::uint32_t k, RngStream& rng) {
        return grr_perturb(v, grr_params(epsilon, k), rng);
      },
      py::arg("v"), py::arg("epsilon"), py::arg("k"), py::arg("rng"));
  m.def(
      "grr_estimate",
      [](const std::vector<double>& counts, double n, double epsilon, std::uint32_t k) {
        return grr_estimate(counts, n, grr_params(epsilon, k));
      },
      py::arg("counts"), py::arg("n"), py::arg("epsilon"), py::arg("k"));
  m.def("grr_variance", &grr_variance, py::arg("epsilon"), py::arg("k"), py::arg("n"));
  m.def(
      "grr_channel",
      [](double epsilon, std::uint32_t k) {
        return channel_rows(grr_channel(grr_params(epsilon, k)));
      },
      py::arg("epsilon"), py::arg("k"));
  m.def(
      "ldp_ratio",
      [](const std::vector<std::vector<double>>& rows) {
        ChannelMatrix channel;
        channel.outputs = rows.size();
        channel.inputs = rows.empty() ? 0 : rows[0].size();
        for (const auto& row : rows) {
          if (row.size() != channel.inputs) throw ShapeError("ragged channel matrix");
          channel.m.insert(channel.m.end(), row.begin(), row.end());
        }
        return ldp_ratio(channel);
      },
      py::arg("channel"));
  m.def("mechanism_channel", &make_channel, py::arg("mechanism"), py::arg("epsilon"),
        py::arg("d"), py::arg("k"), py::arg("py") = 0.5,
        py::arg("prior") = std::vector<std::vector<double>>{},
        "Exact full-record channel, rows indexed by output");
  m.def(
      "mechanism_ldp_ratio",
      [](const std::string& mechanism, double epsilon, std::size_t d, std::uint32_t k,
         double py_fill, const std::vector<std::vector<double>>& prior_rows) {
        return ldp_ratio(make_channel(mechanism, epsilon, d, k, py_fill, prior_rows));
      },
      py::arg("mechanism"), py::arg("epsilon"), py::arg("d"), py::arg("k"),
      py::arg("py") = 0.5, py::arg("prior") = std::vector<std::vector<double>>{});

  m.def(
      "spl_perturb",
      [](const Record& record, double epsilon, const std::vector<std::uint32_t>& sizes,
         RngStream& rng) {
        return spl_perturb(record, epsilon, to_domains(sizes), rng).values;
      },
      py::arg("record"), py::arg("epsilon"), py::arg("domain_sizes"), py::arg("rng"));
  m.def(
      "rsfd_perturb",
      [](const Record& record, double epsilon, const std::vector<std::uint32_t>& sizes,
         RngStream& rng) {
        return rsfd_perturb(record, epsilon, to_domains(sizes), rng).values;
      },
      py::arg("record"), py::arg("epsilon"), py::arg("domain_sizes"), py::arg("rng"));
  m.def(
      "rsrfd_perturb",
      [](const Record& record, double epsilon, const std::vector<std::uint32_t>& sizes,
         const std::vector<std::vector<double>>& prior_rows, RngStream& rng) {
        PriorTable prior;
        prior.freqs = prior_rows;
        return rsrfd_perturb(record, epsilon, to_domains(sizes), prior, rng).values;
      },
      py::arg("record"), py::arg("epsilon"), py::arg("domain_sizes"), py::arg("prior"),
      py::arg("rng"));
  m.def(
      "corr_rr_phase2_perturb",
      [](const Record& record, double epsilon, const std::vector<std::uint32_t>& sizes,
         const std::vector<std::vector<double>>& py_rows, RngStream& rng) {
        return corr_rr_phase2_perturb(record, epsilon, to_domains(sizes),
                                      py_model_from_rows(py_rows), rng)
            .values;
      },
      py::arg("record"), py::arg("epsilon"), py::arg("domain_sizes"), py::arg("py"),
      py::arg("rng"));

  m.def(
      "spl_estimate",
      [](const std::vector<std::vector<double>>& counts, double n, double epsilon,
         const std::vector<std::uint32_t>& sizes) {
        return spl_estimate_from_counts(counts, n, epsilon, to_domains(sizes)).freqs;
      },
      py::arg("counts"), py::arg("n"), py::arg("epsilon"), py::arg("domain_sizes"));
  m.def(
      "rsfd_estimate",
      [](const std::vector<std::vector<double>>& counts, double n, double epsilon,
         const std::vector<std::uint32_t>& sizes) {
        return rsfd_estimate_from_counts(counts, n, epsilon, to_domains(sizes)).freqs;
      },
      py::arg("counts"), py::arg("n"), py::arg("epsilon"), py::arg("domain_sizes"));
  m.def(
      "rsrfd_estimate",
      [](const std::vector<std::vector<double>>& counts, double n, double epsilon,
         const std::vector<std::uint32_t>& sizes,
         const std::vector<std::vector<double>>& prior_rows) {
        PriorTable prior;
        prior.freqs = prior_rows;
        return rsrfd_estimate_from_counts(counts, n, epsilon, to_domains(sizes), prior)
            .freqs;
      },
      py::arg("counts"), py::arg("n"), py::arg("epsilon"), py::arg("domain_sizes"),
      py::arg("prior"));
  m.def(
      "corr_rr_estimate",
      [](const std::vector<std::vector<double>>& counts1, double n1,
         const std::vector<std::vector<double>>& counts2, double n2, double epsilon,
         const std::vector<std::uint32_t>& sizes) {
        return corr_rr_estimate_from_counts(counts1, n1, counts2, n2, epsilon,
                                            to_domains(sizes))
            .freqs;
      },
      py::arg("phase1_counts"), py::arg("n1"), py::arg("phase2_counts"), py::arg("n2"),
      py::arg("epsilon"), py::arg("domain_sizes"));

  m.def(
      "clamp_normalize",
      [](const std::vector<std::vector<double>>& rows) {
        MarginalTable table;
        table.freqs = rows;
        return clamp_normalize(table).freqs;
      },
      py::arg("table"));

  m.def(
      "phase2_value_mse",
      [](const std::vector<double>& fa, const std::vector<double>& fb, double epsilon,
         double n_prime, std::uint32_t v, double py_value) {
        return phase2_value_mse(PairContext::make(fa, fb, epsilon, n_prime), v, py_value);
      },
      py::arg("f_a"), py::arg("f_b"), py::arg("epsilon"), py::arg("n_prime"),
      py::arg("v"), py::arg("p_y"));
  m.def(
      "avg_mse",
      [](const std::vector<double>& fa, const std::vector<double>& fb, double epsilon,
         double n_prime, double py_value) {
        return avg_mse(PairContext::make(fa, fb, epsilon, n_prime), py_value);
      },
      py::arg("f_a"), py::arg("f_b"), py::arg("epsilon"), py::arg("n_prime"),
      py::arg("p_y"));
  m.def(
      "optimal_py",
      [](const std::vector<double>& fa, const std::vector<double>& fb, double epsilon,
         double n_prime) {
        return optimal_py(PairContext::make(fa, fb, epsilon, n_prime));
      },
      py::arg("f_a"), py::arg("f_b"), py::arg("epsilon"), py::arg("n_prime"));
  m.def(
      "infer_py_matrix",
      [](const std::vector<std::vector<double>>& marginals, double epsilon,
         double n_prime) {
        MarginalTable table;
        table.freqs = marginals;
        const PairwisePyModel model = infer_py_matrix(table, epsilon, n_prime);
        std::vector<std::vector<double>> rows(model.dimension(),
                                              std::vector<double>(model.dimension()));
        for (std::size_t j = 0; j < model.dimension(); ++j) {
          for (std::size_t mm = 0; mm < model.dimension(); ++mm) {
            rows[j][mm] = model.at(j, mm);
          }
        }
        return rows;
      },
      py::arg("phase1_marginals"), py::arg("epsilon"), py::arg("n_prime"));

  m.def(
      "gen_synthetic",
      [](std::size_t n, std::size_t d, std::uint32_t k, double rho, std::uint64_t seed) {
        return gen_synthetic(SynthSpec{n, d, k, rho, seed});
      },
      py::arg("n"), py::arg("d"), py::arg("k"), py::arg("rho"), py::arg("seed") = 0);
  m.def("measure_correlation", &measure_correlation, py::arg("dataset"));
  m.def(
      "true_marginals",
      [](const Dataset& data) { return true_marginals(data).freqs; },
      py::arg("dataset"));

  m.def(
      "mse_metric",
      [](const std::vector<std::vector<double>>& truth,
         const std::vector<std::vector<double>>& estimate) {
        MarginalTable t, e;
        t.freqs = truth;
        e.freqs = estimate;
        return mse_metric(t, e);
      },
      py::arg("truth"), py::arg("estimate"));
  m.def("amplified_epsilon", &amplified_epsilon, py::arg("epsilon"), py::arg("d"));
  m.def(
      "run_once",
      [](const Dataset& data, const std::string& mechanism, double epsilon,
         double phase1_fraction, std::uint64_t seed, double prior_fraction) {
        RngStream rng(seed);
        return run_once(data, mechanism_from_name(mechanism), epsilon, phase1_fraction,
                        rng, prior_fraction)
            .freqs;
      },
      py::arg("dataset"), py::arg("mechanism"), py::arg("epsilon"),
      py::arg("phase1_fraction") = 0.1, py::arg("seed") = 0,
      py::arg("prior_fraction") = 0.1);

#ifdef CORRLDP_VERSION
  m.attr("__version__") = CORRLDP_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
