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
#include <span>
#include <string>
#include <vector>

#include "corrldp/aggregation.hpp"
#include "corrldp/core.hpp"
#include "corrldp/mechanisms.hpp"
#include "corrldp/synth.hpp"

namespace corrldp {

struct DatasetSourceConfig {
  enum class Kind { kSynth, kFile };
  Kind kind = Kind::kSynth;
  SynthSpec synth;
  std::string path;  // coded CSV (see dataset_io.hpp)
  std::string name;  // source label in result rows
};

// Declarative sweep description. Baseline mechanisms ignore the phase-one
// fraction grid; their rows are computed once per (mechanism, epsilon) and
// replicated across fractions.
struct ExperimentConfig {
  DatasetSourceConfig dataset;
  std::vector<MechanismId> mechanisms;
  std::vector<double> epsilons;
  std::vector<double> phase1_fractions{0.1};
  int repetitions = 200;
  std::uint64_t master_seed = 0;
  bool clamp_before_mse = false;
  double prior_fraction = 0.1;  // disjoint slice feeding the realistic-fake prior
  bool redraw_data = false;     // redraw the dataset per repetition (synth only)
};

struct ResultRow {
  std::string mechanism;
  double epsilon = 0.0;
  std::size_t d = 0;
  std::uint32_t k = 0;
  std::string source;
  double phase1_fraction = 0.0;
  double mse_mean = 0.0;
  double mse_std = 0.0;
  int runs = 0;
  double wall_ms = 0.0;
};

// (1/d) sum_j (1/k_j) sum_v (truth - estimate)^2.
double mse_metric(const MarginalTable& truth, const MarginalTable& estimate);

// Effective budget under 1-in-d attribute sampling:
// ln(d (e^eps - 1) + 1). Reported in metadata only; mechanisms always run at
// the nominal budget.
double amplified_epsilon(double epsilon, std::size_t d);

// One end-to-end simulated collection round, returning the unclamped
// estimate. For the two-phase mechanism: a seeded shuffle assigns
// round(phase1_fraction * n) users to phase one (split budget), the server
// infers the pairwise copy model from their clamped estimates, the remaining
// users run correlated perturbation, and the phases are combined. The
// realistic-fake baseline draws its prior from a disjoint prior_fraction
// slice privatized with the split-budget mechanism at the same budget.
MarginalTable run_once(const Dataset& dataset, MechanismId mechanism, double epsilon,
                       double phase1_fraction, RngStream& rng,
                       double prior_fraction = 0.1);

// Runs the whole grid: repetitions repetitions per cell, each with an
// independent stream derived from (master seed, cell, repetition), executed
// by a bounded worker pool with deterministic result order. workers <= 0
// means hardware concurrency.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, int workers = 0);

// Exact column contract:
// mechanism,epsilon,d,k,source,phase1_fraction,mse_mean,mse_std,runs,wall_ms
std::string results_to_csv(std::span<const ResultRow> rows);

ExperimentConfig load_experiment_config(const std::string& path);
void validate_config(const ExperimentConfig& config);

}  // namespace corrldp
