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
#include <vector>

#include "corrldp/core.hpp"

namespace corrldp {

// Correlated synthetic dataset description. Attribute 0 is a uniform hub;
// every other attribute copies it with probability rho and redraws uniformly
// otherwise, so for binary domains the hub-pair Pearson correlation equals
// rho exactly.
struct SynthSpec {
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint32_t k = 0;
  double rho = 0.0;
  std::uint64_t seed = 0;
};

Dataset gen_synthetic(const SynthSpec& spec);

// Pearson correlation matrix over the integer codes, unit diagonal; a
// constant column correlates 0 with everything by convention.
std::vector<std::vector<double>> measure_correlation(const Dataset& dataset);

}  // namespace corrldp
