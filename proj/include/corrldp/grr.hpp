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
#include <vector>

#include "corrldp/core.hpp"

namespace corrldp {

// Generalized randomized response over a domain of size k:
//   p = e^eps / (e^eps + k - 1)   probability of reporting the true value
//   q = 1 / (e^eps + k - 1)       probability of each other value
// p / q = e^eps and p + (k-1) q = 1.
struct GrrParams {
  double epsilon = 0.0;
  std::uint32_t k = 0;
  double p = 0.0;
  double q = 0.0;
  double delta = 0.0;  // p - q
};

// Conditional distribution of a mechanism's output given its input,
// stored row-major: at(y, x) = Pr[output = y | input = x]. Columns are
// probability distributions.
struct ChannelMatrix {
  std::size_t outputs = 0;
  std::size_t inputs = 0;
  std::vector<double> m;

  double& at(std::size_t y, std::size_t x) { return m[y * inputs + x]; }
  double at(std::size_t y, std::size_t x) const { return m[y * inputs + x]; }
};

GrrParams grr_params(double epsilon, std::uint32_t k);

// Reports v with probability p, each other value with probability q.
// Consumes one draw on the keep branch and two otherwise.
std::uint32_t grr_perturb(std::uint32_t v, const GrrParams& params, RngStream& rng);

// Unbiased frequency estimate (c_v / n - q) / (p - q) per value. Output may
// lie outside [0, 1]; callers clamp when they need a distribution.
std::vector<double> grr_estimate(std::span<const double> counts, double n,
                                 const GrrParams& params);

// Closed-form approximate estimator variance (e^eps + k - 2) / (n (e^eps - 1)^2).
double grr_variance(double epsilon, std::uint32_t k, double n);

// k x k channel with p on the diagonal and q elsewhere.
ChannelMatrix grr_channel(const GrrParams& params);

// max over outputs y and input pairs (x, x') of at(y, x) / at(y, x'),
// with 0/0 counted as 1 and positive/0 as +infinity. Equals e^eps for a
// GRR channel; a mechanism satisfies eps-LDP iff this is <= e^eps.
double ldp_ratio(const ChannelMatrix& channel);

}  // namespace corrldp
