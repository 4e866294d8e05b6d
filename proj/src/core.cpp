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

#include "corrldp/core.hpp"

#include <cmath>
#include <string>

namespace corrldp {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

void RngStream::absorb(std::uint64_t w) {
  std::uint64_t x = key_ ^ (w + 0x9e3779b97f4a7c15ULL + (key_ << 6) + (key_ >> 2));
  key_ = splitmix64(x);
}

void RngStream::seed_state() {
  std::uint64_t x = key_;
  for (auto& word : s_) word = splitmix64(x);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

bool MarginalTable::shape_matches(std::span<const CategoricalDomain> domains) const {
  if (freqs.size() != domains.size()) return false;
  for (std::size_t j = 0; j < freqs.size(); ++j) {
    if (freqs[j].size() != domains[j].size) return false;
  }
  return true;
}

void validate_dataset(const Dataset& dataset) {
  if (dataset.domains.empty()) {
    throw ShapeError("dataset must declare at least one attribute");
  }
  if (dataset.records.empty()) {
    throw ShapeError("dataset must contain at least one record");
  }
  for (std::size_t j = 0; j < dataset.domains.size(); ++j) {
    if (dataset.domains[j].size < 2) {
      throw InvalidDomain("attribute " + std::to_string(j) +
                          " has domain size " +
                          std::to_string(dataset.domains[j].size) +
                          ", need >= 2");
    }
  }
  const std::size_t d = dataset.domains.size();
  for (std::size_t i = 0; i < dataset.records.size(); ++i) {
    const Record& row = dataset.records[i];
    if (row.size() != d) {
      throw ShapeError("record " + std::to_string(i) + " has " +
                       std::to_string(row.size()) + " entries, expected " +
                       std::to_string(d));
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (row[j] >= dataset.domains[j].size) {
        throw DomainViolation(
            "record " + std::to_string(i) + ", attribute " + std::to_string(j) +
                ": value " + std::to_string(row[j]) + " outside domain of size " +
                std::to_string(dataset.domains[j].size),
            static_cast<std::ptrdiff_t>(i), static_cast<std::ptrdiff_t>(j));
      }
    }
  }
}

MarginalTable clamp_normalize(const MarginalTable& table) {
  MarginalTable out;
  out.freqs.reserve(table.freqs.size());
  for (const auto& row : table.freqs) {
    std::vector<double> clipped(row.size());
    bool already_valid = true;
    double raw_sum = 0.0;
    for (std::size_t v = 0; v < row.size(); ++v) {
      double x = row[v];
      if (x < 0.0 || x > 1.0) already_valid = false;
      clipped[v] = std::min(1.0, std::max(0.0, x));
      raw_sum += clipped[v];
    }
    if (already_valid && std::abs(raw_sum - 1.0) <= 1e-9) {
      out.freqs.push_back(row);
      continue;
    }
    if (raw_sum <= 0.0) {
      const double u = row.empty() ? 0.0 : 1.0 / static_cast<double>(row.size());
      std::fill(clipped.begin(), clipped.end(), u);
    } else {
      for (auto& x : clipped) x /= raw_sum;
    }
    out.freqs.push_back(std::move(clipped));
  }
  return out;
}

bool is_normalized(const MarginalTable& table, double tol) {
  for (const auto& row : table.freqs) {
    double sum = 0.0;
    for (double x : row) {
      if (x < -tol || x > 1.0 + tol) return false;
      sum += x;
    }
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

MarginalTable uniform_marginals(std::span<const CategoricalDomain> domains) {
  MarginalTable out;
  out.freqs.reserve(domains.size());
  for (const auto& dom : domains) {
    out.freqs.emplace_back(dom.size, dom.size ? 1.0 / dom.size : 0.0);
  }
  return out;
}

}  // namespace corrldp
