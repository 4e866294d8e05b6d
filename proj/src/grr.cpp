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

#include "corrldp/grr.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace corrldp {

GrrParams grr_params(double epsilon, std::uint32_t k) {
  if (k < 2) {
    throw InvalidDomain("grr requires domain size >= 2, got " + std::to_string(k));
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidBudget("privacy budget must be a positive finite real");
  }
  GrrParams params;
  params.epsilon = epsilon;
  params.k = k;
  const double e = std::exp(epsilon);
  params.p = e / (e + k - 1.0);
  params.q = 1.0 / (e + k - 1.0);
  params.delta = params.p - params.q;
  return params;
}

std::uint32_t grr_perturb(std::uint32_t v, const GrrParams& params, RngStream& rng) {
  if (v >= params.k) {
    throw DomainViolation("input value " + std::to_string(v) +
                          " outside domain of size " + std::to_string(params.k));
  }
  if (rng.bernoulli(params.p)) return v;
  // Uniform over the k-1 other values: draw in [0, k-1) and skip v.
  std::uint32_t r = rng.uniform_int(params.k - 1);
  return r + (r >= v ? 1u : 0u);
}

std::vector<double> grr_estimate(std::span<const double> counts, double n,
                                 const GrrParams& params) {
  if (n < 1.0) {
    throw CountMismatch("report count must be >= 1");
  }
  double total = 0.0;
  for (double c : counts) total += c;
  if (std::abs(total - n) > 1e-6 * std::max(1.0, n)) {
    throw CountMismatch("tallies sum to " + std::to_string(total) +
                        " but n = " + std::to_string(n));
  }
  std::vector<double> est(counts.size());
  for (std::size_t v = 0; v < counts.size(); ++v) {
    est[v] = (counts[v] / n - params.q) / params.delta;
  }
  return est;
}

double grr_variance(double epsilon, std::uint32_t k, double n) {
  if (n < 1.0) {
    throw CountMismatch("report count must be >= 1");
  }
  const GrrParams params = grr_params(epsilon, k);  // validates inputs
  (void)params;
  const double e = std::exp(epsilon);
  return (e + k - 2.0) / (n * (e - 1.0) * (e - 1.0));
}

ChannelMatrix grr_channel(const GrrParams& params) {
  ChannelMatrix channel;
  channel.outputs = params.k;
  channel.inputs = params.k;
  channel.m.assign(static_cast<std::size_t>(params.k) * params.k, params.q);
  for (std::uint32_t v = 0; v < params.k; ++v) channel.at(v, v) = params.p;
  return channel;
}

double ldp_ratio(const ChannelMatrix& channel) {
  double worst = 1.0;
  for (std::size_t y = 0; y < channel.outputs; ++y) {
    double row_max = 0.0;
    double row_min = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < channel.inputs; ++x) {
      const double v = channel.at(y, x);
      row_max = std::max(row_max, v);
      row_min = std::min(row_min, v);
    }
    if (row_max == 0.0) continue;  // all pairs are 0/0
    if (row_min == 0.0) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, row_max / row_min);
  }
  return worst;
}

}  // namespace corrldp
