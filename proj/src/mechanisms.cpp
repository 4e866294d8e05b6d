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

#include "corrldp/mechanisms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace corrldp {

namespace {

void check_record_shape(const Record& record,
                        std::span<const CategoricalDomain> domains) {
  if (domains.empty()) {
    throw ShapeError("mechanism requires at least one attribute");
  }
  if (record.size() != domains.size()) {
    throw ShapeError("record has " + std::to_string(record.size()) +
                     " entries, expected " + std::to_string(domains.size()));
  }
}

std::uint32_t common_domain_size(std::span<const CategoricalDomain> domains) {
  const std::uint32_t k = domains[0].size;
  for (const auto& dom : domains) {
    if (dom.size != k) {
      throw HeterogeneousDomains(
          "correlated perturbation requires one common domain size");
    }
  }
  return k;
}

void check_py_model(const PairwisePyModel& py, std::size_t d) {
  if (py.dimension() != d) {
    throw ShapeError("p_y model is " + std::to_string(py.dimension()) +
                     "-dimensional, expected " + std::to_string(d));
  }
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t m = 0; m < d; ++m) {
      if (j == m) continue;
      const double v = py.at(j, m);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainViolation("p_y entry outside [0, 1]");
      }
    }
  }
}

void check_prior_shape(const PriorTable& prior,
                       std::span<const CategoricalDomain> domains) {
  if (!prior.shape_matches(domains)) {
    throw PriorShapeError("prior dimensions do not match the attribute domains");
  }
}

std::uint32_t draw_categorical(std::span<const double> weights, RngStream& rng) {
  const double u = rng.next_double();
  double acc = 0.0;
  for (std::size_t v = 0; v + 1 < weights.size(); ++v) {
    acc += weights[v];
    if (u < acc) return static_cast<std::uint32_t>(v);
  }
  return static_cast<std::uint32_t>(weights.size() - 1);
}

// Uniform over the domain minus {excluded}, one draw.
std::uint32_t draw_other(std::uint32_t k, std::uint32_t excluded, RngStream& rng) {
  const std::uint32_t r = rng.uniform_int(k - 1);
  return r + (r >= excluded ? 1u : 0u);
}

std::vector<GrrParams> per_attribute_params(double per_attr_epsilon,
                                            std::span<const CategoricalDomain> domains) {
  std::vector<GrrParams> params;
  params.reserve(domains.size());
  for (const auto& dom : domains) {
    params.push_back(grr_params(per_attr_epsilon, dom.size));
  }
  return params;
}

}  // namespace

std::string mechanism_name(MechanismId mech) {
  switch (mech) {
    case MechanismId::kGrr:
      return "GRR";
    case MechanismId::kSpl:
      return "SPL";
    case MechanismId::kRsFd:
      return "RSFD";
    case MechanismId::kRsRfd:
      return "RSRFD";
    case MechanismId::kCorrRr:
      return "CORR_RR";
  }
  return "UNKNOWN";
}

MechanismId mechanism_from_name(const std::string& name) {
  std::string up;
  up.reserve(name.size());
  for (char c : name) up.push_back(static_cast<char>(std::toupper(c)));
  if (up == "GRR") return MechanismId::kGrr;
  if (up == "SPL") return MechanismId::kSpl;
  if (up == "RSFD" || up == "RS+FD") return MechanismId::kRsFd;
  if (up == "RSRFD" || up == "RS+RFD") return MechanismId::kRsRfd;
  if (up == "CORR_RR" || up == "CORRRR" || up == "CORR-RR") return MechanismId::kCorrRr;
  throw ShapeError("unknown mechanism: " + name);
}

std::size_t spl_perturb_into(const Record& record,
                             std::span<const GrrParams> per_attr_params,
                             RngStream& rng, std::span<std::uint32_t> out) {
  for (std::size_t j = 0; j < record.size(); ++j) {
    out[j] = grr_perturb(record[j], per_attr_params[j], rng);
  }
  return kNoSelection;
}

std::size_t rsfd_perturb_into(const Record& record,
                              std::span<const GrrParams> full_budget_params,
                              RngStream& rng, std::span<std::uint32_t> out) {
  const std::size_t d = record.size();
  const std::size_t j = rng.uniform_int(static_cast<std::uint32_t>(d));
  for (std::size_t m = 0; m < d; ++m) {
    if (m == j) {
      out[m] = grr_perturb(record[m], full_budget_params[m], rng);
    } else {
      out[m] = rng.uniform_int(full_budget_params[m].k);
    }
  }
  return j;
}

std::size_t rsrfd_perturb_into(const Record& record,
                               std::span<const GrrParams> full_budget_params,
                               const PriorTable& prior, RngStream& rng,
                               std::span<std::uint32_t> out) {
  const std::size_t d = record.size();
  const std::size_t j = rng.uniform_int(static_cast<std::uint32_t>(d));
  for (std::size_t m = 0; m < d; ++m) {
    if (m == j) {
      out[m] = grr_perturb(record[m], full_budget_params[m], rng);
    } else {
      out[m] = draw_categorical(prior.freqs[m], rng);
    }
  }
  return j;
}

std::size_t corr_rr_phase2_perturb_into(const Record& record,
                                        const GrrParams& full_budget_params,
                                        const PairwisePyModel& py_model,
                                        RngStream& rng,
                                        std::span<std::uint32_t> out) {
  const std::size_t d = record.size();
  const std::size_t j = rng.uniform_int(static_cast<std::uint32_t>(d));
  const std::uint32_t yj = grr_perturb(record[j], full_budget_params, rng);
  out[j] = yj;
  for (std::size_t m = 0; m < d; ++m) {
    if (m == j) continue;
    if (rng.bernoulli(py_model.at(j, m))) {
      out[m] = yj;
    } else {
      out[m] = draw_other(full_budget_params.k, yj, rng);
    }
  }
  return j;
}

PerturbedRecord spl_perturb(const Record& record, double epsilon,
                            std::span<const CategoricalDomain> domains,
                            RngStream& rng) {
  check_record_shape(record, domains);
  const auto params =
      per_attribute_params(epsilon / static_cast<double>(domains.size()), domains);
  PerturbedRecord out;
  out.values.resize(record.size());
  spl_perturb_into(record, params, rng, out.values);
  return out;
}

PerturbedRecord rsfd_perturb(const Record& record, double epsilon,
                             std::span<const CategoricalDomain> domains,
                             RngStream& rng) {
  check_record_shape(record, domains);
  const auto params = per_attribute_params(epsilon, domains);
  PerturbedRecord out;
  out.values.resize(record.size());
  out.selected_index = rsfd_perturb_into(record, params, rng, out.values);
  return out;
}

PerturbedRecord rsrfd_perturb(const Record& record, double epsilon,
                              std::span<const CategoricalDomain> domains,
                              const PriorTable& prior, RngStream& rng) {
  check_record_shape(record, domains);
  check_prior_shape(prior, domains);
  const auto params = per_attribute_params(epsilon, domains);
  PerturbedRecord out;
  out.values.resize(record.size());
  out.selected_index = rsrfd_perturb_into(record, params, prior, rng, out.values);
  return out;
}

PerturbedRecord corr_rr_phase2_perturb(const Record& record, double epsilon,
                                       std::span<const CategoricalDomain> domains,
                                       const PairwisePyModel& py_model,
                                       RngStream& rng) {
  check_record_shape(record, domains);
  const std::uint32_t k = common_domain_size(domains);
  check_py_model(py_model, domains.size());
  const GrrParams params = grr_params(epsilon, k);
  PerturbedRecord out;
  out.values.resize(record.size());
  out.selected_index = corr_rr_phase2_perturb_into(record, params, py_model, rng, out.values);
  return out;
}

ChannelMatrix mechanism_channel(MechanismId mech, double epsilon, std::size_t d,
                                std::uint32_t k, const PairwisePyModel* py_model,
                                const PriorTable* prior) {
  if (d < 1) throw ShapeError("channel requires at least one attribute");
  if (k < 2) throw InvalidDomain("channel requires domain size >= 2");

  constexpr std::size_t kGuard = 4096;
  std::size_t n = 1;
  for (std::size_t j = 0; j < d; ++j) {
    if (n > kGuard / k) {
      throw TooLarge("k^d exceeds the enumeration guard of 4096");
    }
    n *= k;
  }
  if (n > kGuard) throw TooLarge("k^d exceeds the enumeration guard of 4096");

  const auto digit = [k](std::size_t idx, std::size_t pos) -> std::uint32_t {
    for (std::size_t s = 0; s < pos; ++s) idx /= k;
    return static_cast<std::uint32_t>(idx % k);
  };

  ChannelMatrix channel;
  channel.outputs = n;
  channel.inputs = n;
  channel.m.assign(n * n, 0.0);

  switch (mech) {
    case MechanismId::kGrr: {
      if (d != 1) throw ShapeError("grr channel is single-attribute");
      return grr_channel(grr_params(epsilon, k));
    }
    case MechanismId::kSpl: {
      const ChannelMatrix g = grr_channel(grr_params(epsilon / static_cast<double>(d), k));
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
          double prob = 1.0;
          for (std::size_t j = 0; j < d; ++j) {
            prob *= g.at(digit(y, j), digit(x, j));
          }
          channel.at(y, x) = prob;
        }
      }
      return channel;
    }
    case MechanismId::kRsFd: {
      const ChannelMatrix g = grr_channel(grr_params(epsilon, k));
      const double fake = std::pow(1.0 / k, static_cast<double>(d - 1));
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
          double sum = 0.0;
          for (std::size_t j = 0; j < d; ++j) {
            sum += g.at(digit(y, j), digit(x, j));
          }
          channel.at(y, x) = fake * sum / static_cast<double>(d);
        }
      }
      return channel;
    }
    case MechanismId::kRsRfd: {
      if (prior == nullptr) {
        throw PriorShapeError("realistic fake data channel requires a prior");
      }
      const std::vector<CategoricalDomain> domains(d, CategoricalDomain{k});
      check_prior_shape(*prior, domains);
      const ChannelMatrix g = grr_channel(grr_params(epsilon, k));
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
          double sum = 0.0;
          for (std::size_t j = 0; j < d; ++j) {
            double term = g.at(digit(y, j), digit(x, j));
            for (std::size_t m = 0; m < d; ++m) {
              if (m != j) term *= prior->freqs[m][digit(y, m)];
            }
            sum += term;
          }
          channel.at(y, x) = sum / static_cast<double>(d);
        }
      }
      return channel;
    }
    case MechanismId::kCorrRr: {
      if (py_model == nullptr) {
        throw ShapeError("correlated channel requires a p_y model");
      }
      check_py_model(*py_model, d);
      const ChannelMatrix g = grr_channel(grr_params(epsilon, k));
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
          double sum = 0.0;
          for (std::size_t j = 0; j < d; ++j) {
            const std::uint32_t yj = digit(y, j);
            double term = g.at(yj, digit(x, j));
            for (std::size_t m = 0; m < d && term > 0.0; ++m) {
              if (m == j) continue;
              const double py = py_model->at(j, m);
              term *= digit(y, m) == yj ? py : (1.0 - py) / (k - 1.0);
            }
            sum += term;
          }
          channel.at(y, x) = sum / static_cast<double>(d);
        }
      }
      return channel;
    }
  }
  throw ShapeError("unknown mechanism id");
}

}  // namespace corrldp
