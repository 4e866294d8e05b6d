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

#include "corrldp/synth.hpp"

#include <cmath>

namespace corrldp {

Dataset gen_synthetic(const SynthSpec& spec) {
  if (spec.n < 1) throw ShapeError("synthetic dataset needs n >= 1");
  if (spec.d < 1) throw ShapeError("synthetic dataset needs d >= 1");
  if (spec.k < 2) throw InvalidDomain("synthetic dataset needs k >= 2");
  if (!(spec.rho >= 0.0 && spec.rho <= 1.0)) {
    throw ShapeError("rho must lie in [0, 1]");
  }

  Dataset data;
  data.domains.assign(spec.d, CategoricalDomain{spec.k});
  data.records.resize(spec.n);

  const RngStream root{spec.seed};
  for (std::size_t i = 0; i < spec.n; ++i) {
    RngStream user = root.child(i);
    Record& row = data.records[i];
    row.resize(spec.d);
    row[0] = user.uniform_int(spec.k);
    for (std::size_t j = 1; j < spec.d; ++j) {
      row[j] = user.bernoulli(spec.rho) ? row[0] : user.uniform_int(spec.k);
    }
  }
  return data;
}

std::vector<std::vector<double>> measure_correlation(const Dataset& dataset) {
  const std::size_t d = dataset.attribute_count();
  const std::size_t n = dataset.user_count();
  if (n < 2) throw ShapeError("correlation needs at least two records");

  std::vector<double> mean(d, 0.0);
  for (const Record& row : dataset.records) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
  }
  for (auto& m : mean) m /= static_cast<double>(n);

  std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
  for (const Record& row : dataset.records) {
    for (std::size_t j = 0; j < d; ++j) {
      const double xj = row[j] - mean[j];
      for (std::size_t m = j; m < d; ++m) {
        cov[j][m] += xj * (row[m] - mean[m]);
      }
    }
  }

  std::vector<std::vector<double>> corr(d, std::vector<double>(d, 0.0));
  for (std::size_t j = 0; j < d; ++j) {
    corr[j][j] = 1.0;
    for (std::size_t m = j + 1; m < d; ++m) {
      const double denom = std::sqrt(cov[j][j] * cov[m][m]);
      const double r = denom > 0.0 ? cov[j][m] / denom : 0.0;
      corr[j][m] = r;
      corr[m][j] = r;
    }
  }
  return corr;
}

}  // namespace corrldp
