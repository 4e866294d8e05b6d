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

#include <optional>
#include <span>
#include <vector>

#include "corrldp/core.hpp"
#include "corrldp/mechanisms.hpp"

namespace corrldp {

enum class Phase { kOne, kTwo };

// A batch of sanitized records together with the metadata needed to invert
// the report law. The phase tag applies to the correlated mechanism only.
struct ReportBatch {
  MechanismId mechanism = MechanismId::kGrr;
  double epsilon = 0.0;
  std::vector<CategoricalDomain> domains;
  std::vector<Record> reports;
  std::optional<Phase> phase;
};

// Per-attribute, per-value report tallies.
std::vector<std::vector<double>> tally_reports(std::span<const Record> reports,
                                               std::span<const CategoricalDomain> domains);

// Split-budget estimator: per attribute, inverts GRR at epsilon/d. Unclamped.
MarginalTable spl_estimate(const ReportBatch& batch, double epsilon,
                           std::span<const CategoricalDomain> domains);
MarginalTable spl_estimate_from_counts(const std::vector<std::vector<double>>& counts,
                                       double n, double epsilon,
                                       std::span<const CategoricalDomain> domains);

// Inverts the fake-data report law Pr[Y_j = v] = (1/d)(q + delta f_j(v)) +
// ((d-1)/d)(1/k_j), giving f_hat = d (c/n - (d-1)/(d k) - q/d) / delta.
MarginalTable rsfd_estimate(const ReportBatch& batch, double epsilon,
                            std::span<const CategoricalDomain> domains);
MarginalTable rsfd_estimate_from_counts(const std::vector<std::vector<double>>& counts,
                                        double n, double epsilon,
                                        std::span<const CategoricalDomain> domains);

// Same inversion with the prior in place of the uniform fake distribution.
MarginalTable rsrfd_estimate(const ReportBatch& batch, double epsilon,
                             std::span<const CategoricalDomain> domains,
                             const PriorTable& prior);
MarginalTable rsrfd_estimate_from_counts(const std::vector<std::vector<double>>& counts,
                                         double n, double epsilon,
                                         std::span<const CategoricalDomain> domains,
                                         const PriorTable& prior);

// Phase-resolved estimates of the two-phase mechanism. Phase one is the
// split-budget estimator over n1 users; phase two inverts GRR at the full
// budget over n2 users (biased by construction); the final estimate is the
// user-count weighted combination (n1 f1 + n2 f2) / (n1 + n2). Unclamped.
MarginalTable corr_rr_estimate(const ReportBatch& phase1, const ReportBatch& phase2,
                               double epsilon,
                               std::span<const CategoricalDomain> domains);
MarginalTable corr_rr_estimate_from_counts(
    const std::vector<std::vector<double>>& phase1_counts, double n1,
    const std::vector<std::vector<double>>& phase2_counts, double n2,
    double epsilon, std::span<const CategoricalDomain> domains);

// The phase-two component alone: per attribute, (c_v/n - q)/delta at the full
// budget.
MarginalTable phase2_estimate_from_counts(const std::vector<std::vector<double>>& counts,
                                          double n, double epsilon,
                                          std::span<const CategoricalDomain> domains);

}  // namespace corrldp
