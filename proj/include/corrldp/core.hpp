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

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "corrldp/errors.hpp"

namespace corrldp {

// A categorical attribute domain. Values are the integers 0..size-1.
struct CategoricalDomain {
  std::uint32_t size = 0;
};

using Record = std::vector<std::uint32_t>;

// n user records over d categorical attributes.
struct Dataset {
  std::vector<CategoricalDomain> domains;
  std::vector<Record> records;

  std::size_t attribute_count() const { return domains.size(); }
  std::size_t user_count() const { return records.size(); }
};

struct PrivacyBudget {
  double epsilon = 0.0;
};

// Deterministic pseudo-random stream (xoshiro256** state seeded from a key
// of 64-bit words via a splitmix64 sponge). Two streams built from different
// keys are statistically independent; the same key always reproduces the
// same draw sequence. child() derives an independent substream without
// touching the parent's state, so derivation order never matters.
class RngStream {
 public:
  RngStream() { seed_state(); }

  explicit RngStream(std::uint64_t seed) {
    absorb(seed);
    seed_state();
  }

  RngStream(std::initializer_list<std::uint64_t> key) {
    for (std::uint64_t w : key) absorb(w);
    seed_state();
  }

  template <class... Words>
  RngStream child(Words... words) const {
    RngStream s(key_, KeyOnly{});
    (s.absorb(static_cast<std::uint64_t>(words)), ...);
    s.seed_state();
    return s;
  }

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, bound) using one 64-bit draw (fixed-point multiply;
  // bias below 2^-32 for any bound that fits in 32 bits).
  std::uint32_t uniform_int(std::uint32_t bound) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  bool bernoulli(double p) { return next_double() < p; }

 private:
  struct KeyOnly {};
  RngStream(std::uint64_t key, KeyOnly) : key_(key) {}

  void absorb(std::uint64_t w);
  void seed_state();

  std::uint64_t key_ = 0;
  std::array<std::uint64_t, 4> s_{};
};

// Per-attribute real-valued frequency vectors. Estimators may emit entries
// outside [0, 1]; clamp_normalize turns a table into a proper distribution.
struct MarginalTable {
  std::vector<std::vector<double>> freqs;

  std::size_t attribute_count() const { return freqs.size(); }
  bool shape_matches(std::span<const CategoricalDomain> domains) const;
};

// Throws unless all Dataset invariants hold: n >= 1, d >= 1, every domain
// size >= 2, every record of length d with in-domain values.
void validate_dataset(const Dataset& dataset);

// Clips every entry to [0, 1], then rescales each attribute row to sum 1.
// A row that clips to all zeros becomes the uniform distribution. Rows that
// are already normalized are returned unchanged, which makes the operation
// idempotent.
MarginalTable clamp_normalize(const MarginalTable& table);

// True when all entries lie in [0, 1] and every row sums to 1 within tol.
bool is_normalized(const MarginalTable& table, double tol = 1e-9);

MarginalTable uniform_marginals(std::span<const CategoricalDomain> domains);

}  // namespace corrldp
