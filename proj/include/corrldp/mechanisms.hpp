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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corrldp/core.hpp"
#include "corrldp/grr.hpp"

namespace corrldp {

enum class MechanismId { kGrr, kSpl, kRsFd, kRsRfd, kCorrRr };

std::string mechanism_name(MechanismId mech);
MechanismId mechanism_from_name(const std::string& name);

// Pairwise copy probabilities p_{j<->m} in [0, 1], symmetric, diagonal unused.
// In the correlated mechanism's second phase, an unselected attribute m copies
// the selected attribute j's perturbed value with probability at(j, m).
class PairwisePyModel {
 public:
  PairwisePyModel() = default;
  // All off-diagonal entries set to `fill`.
  explicit PairwisePyModel(std::size_t d, double fill = 0.5)
      : d_(d), p_(d * d, fill) {}

  std::size_t dimension() const { return d_; }
  double at(std::size_t j, std::size_t m) const { return p_[j * d_ + m]; }
  void set(std::size_t j, std::size_t m, double value) {
    p_[j * d_ + m] = value;
    p_[m * d_ + j] = value;
  }

 private:
  std::size_t d_ = 0;
  std::vector<double> p_;
};

// Per-attribute distributions used to draw realistic fake values.
using PriorTable = MarginalTable;

// One sanitized record. selected_index marks the attribute perturbed with the
// full budget (absent for the split-budget mechanism); it is white-box test
// bookkeeping and is never part of the simulated wire report.
struct PerturbedRecord {
  Record values;
  std::optional<std::size_t> selected_index;
};

// Split budget: every attribute j goes through GRR at epsilon/d over its own
// domain, with independent draws.
PerturbedRecord spl_perturb(const Record& record, double epsilon,
                            std::span<const CategoricalDomain> domains,
                            RngStream& rng);

// Random sampling plus fake data: one uniformly selected attribute goes
// through GRR at the full budget, every other attribute reports a uniform
// fake value independent of the input.
PerturbedRecord rsfd_perturb(const Record& record, double epsilon,
                             std::span<const CategoricalDomain> domains,
                             RngStream& rng);

// As rsfd_perturb, but fake values are drawn from per-attribute priors.
PerturbedRecord rsrfd_perturb(const Record& record, double epsilon,
                              std::span<const CategoricalDomain> domains,
                              const PriorTable& prior, RngStream& rng);

// Correlation-aware perturbation: one uniformly selected attribute j goes
// through GRR at the full budget; every other attribute m copies that
// perturbed value with probability p_{j<->m} and otherwise reports a uniform
// value over the rest of the domain. The input is consumed only at index j.
// Requires all attribute domains to have the same size.
PerturbedRecord corr_rr_phase2_perturb(const Record& record, double epsilon,
                                       std::span<const CategoricalDomain> domains,
                                       const PairwisePyModel& py_model,
                                       RngStream& rng);

// Allocation-free variants for hot loops; params are precomputed per
// attribute (a single shared entry for the correlated mechanism). They
// return the selected attribute index, or npos when there is none.
inline constexpr std::size_t kNoSelection = static_cast<std::size_t>(-1);

std::size_t spl_perturb_into(const Record& record,
                             std::span<const GrrParams> per_attr_params,
                             RngStream& rng, std::span<std::uint32_t> out);
std::size_t rsfd_perturb_into(const Record& record,
                              std::span<const GrrParams> full_budget_params,
                              RngStream& rng, std::span<std::uint32_t> out);
std::size_t rsrfd_perturb_into(const Record& record,
                               std::span<const GrrParams> full_budget_params,
                               const PriorTable& prior, RngStream& rng,
                               std::span<std::uint32_t> out);
std::size_t corr_rr_phase2_perturb_into(const Record& record,
                                        const GrrParams& full_budget_params,
                                        const PairwisePyModel& py_model,
                                        RngStream& rng,
                                        std::span<std::uint32_t> out);

// Exact full-record channel of a mechanism over d attributes with a common
// domain size k, computed by enumeration (no sampling) and averaging over the
// uniform attribute selection. Guarded by k^d <= 4096. py_model is required
// for the correlated mechanism, prior for the realistic-fake-data one.
ChannelMatrix mechanism_channel(MechanismId mech, double epsilon, std::size_t d,
                                std::uint32_t k,
                                const PairwisePyModel* py_model = nullptr,
                                const PriorTable* prior = nullptr);

}  // namespace corrldp
