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

#include <doctest.h>

#include "test_util.hpp"

using namespace corrldp;

TEST_CASE("grr_params at eps = ln 3, k = 2") {
  const GrrParams params = grr_params(std::log(3.0), 2);
  CHECK(params.p == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(params.q == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("grr_params at eps = 1, k = 10 against a long-double evaluation") {
  // Independent high-precision route: p = e/(e+9), q = 1/(e+9).
  const long double e = std::exp(1.0L);
  const double p_ref = static_cast<double>(e / (e + 9.0L));
  const double q_ref = static_cast<double>(1.0L / (e + 9.0L));
  const GrrParams params = grr_params(1.0, 10);
  CHECK(params.p == doctest::Approx(p_ref).epsilon(1e-14));
  CHECK(params.q == doctest::Approx(q_ref).epsilon(1e-14));
  // frozen digits from the oracle
  CHECK(params.p == doctest::Approx(0.231969316684).epsilon(1e-9));
  CHECK(params.q == doctest::Approx(0.085336742591).epsilon(1e-9));
}

TEST_CASE("grr_params invariants over a parameter grid") {
  for (double eps : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    for (std::uint32_t k : {2u, 3u, 5u, 16u, 32u}) {
      const GrrParams params = grr_params(eps, k);
      CHECK(std::abs(params.p + (k - 1) * params.q - 1.0) <= 1e-12);
      CHECK(params.p / params.q == doctest::Approx(std::exp(eps)).epsilon(1e-9));
      CHECK(params.delta > 0.0);
    }
  }
}

TEST_CASE("grr_params rejects bad inputs") {
  CHECK_THROWS_AS(grr_params(1.0, 1), InvalidDomain);
  CHECK_THROWS_AS(grr_params(0.0, 4), InvalidBudget);
  CHECK_THROWS_AS(grr_params(-1.0, 4), InvalidBudget);
  CHECK_THROWS_AS(grr_params(std::numeric_limits<double>::infinity(), 4), InvalidBudget);
  CHECK_THROWS_AS(grr_params(std::numeric_limits<double>::quiet_NaN(), 4), InvalidBudget);
}

TEST_CASE("grr_perturb keeps the true value with probability p") {
  const GrrParams params = grr_params(std::log(3.0), 2);
  RngStream rng{2024};
  int kept = 0;
  const int trials = 1000000;
  for (int i = 0; i < trials; ++i) {
    if (grr_perturb(0, params, rng) == 0) ++kept;
  }
  const double freq = static_cast<double>(kept) / trials;
  CHECK(freq >= 0.7485);
  CHECK(freq <= 0.7515);
}

TEST_CASE("grr_perturb at a huge budget is the identity") {
  const GrrParams params = grr_params(50.0, 2);
  RngStream rng{1};
  for (int i = 0; i < 10000; ++i) {
    CHECK(grr_perturb(1, params, rng) == 1);
  }
}

TEST_CASE("grr_perturb is deterministic under a fixed seed") {
  const GrrParams params = grr_params(1.0, 5);
  RngStream a{99};
  RngStream b{99};
  for (int i = 0; i < 200; ++i) {
    CHECK(grr_perturb(static_cast<std::uint32_t>(i % 5), params, a) ==
          grr_perturb(static_cast<std::uint32_t>(i % 5), params, b));
  }
}

TEST_CASE("grr_perturb rejects out-of-domain input") {
  const GrrParams params = grr_params(1.0, 4);
  RngStream rng{0};
  CHECK_THROWS_AS(grr_perturb(4, params, rng), DomainViolation);
}

TEST_CASE("grr_estimate formula anchor points") {
  const GrrParams params = grr_params(1.3, 2);
  const double n = 1000.0;
  {
    const std::vector<double> counts = {params.q * n, n - params.q * n};
    CHECK(grr_estimate(counts, n, params)[0] == doctest::Approx(0.0).epsilon(1e-12));
  }
  {
    const std::vector<double> counts = {params.p * n, n - params.p * n};
    CHECK(grr_estimate(counts, n, params)[0] == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    const double mid = 0.5 * (params.p + params.q) * n;
    const std::vector<double> counts = {mid, n - mid};
    CHECK(grr_estimate(counts, n, params)[0] == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("grr_estimate rejects tallies that do not sum to n") {
  const GrrParams params = grr_params(1.0, 2);
  const std::vector<double> counts = {10.0, 5.0};
  CHECK_THROWS_AS(grr_estimate(counts, 100.0, params), CountMismatch);
}

TEST_CASE("grr_estimate inverts the expected-count map exactly") {
  RngStream rng{77};
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t k = 2 + rng.uniform_int(15);
    const double eps = 0.3 + 4.0 * rng.next_double();
    const GrrParams params = grr_params(eps, k);
    const auto f = testutil::random_simplex(k, rng);
    const double n = 1000.0;
    std::vector<double> counts(k);
    for (std::uint32_t v = 0; v < k; ++v) {
      counts[v] = n * (params.q + params.delta * f[v]);
    }
    const auto est = grr_estimate(counts, n, params);
    for (std::uint32_t v = 0; v < k; ++v) {
      CHECK(std::abs(est[v] - f[v]) <= 1e-12);
    }
  }
}

TEST_CASE("grr_variance closed form and 1/n scaling") {
  CHECK(grr_variance(std::log(3.0), 2, 1.0) == doctest::Approx(0.75).epsilon(1e-12));
  const double v1 = grr_variance(1.0, 10, 1000.0);
  const double v2 = grr_variance(1.0, 10, 2000.0);
  CHECK(v1 == doctest::Approx(2.0 * v2).epsilon(1e-12));
  // frozen direct evaluation at eps = 1, k = 10, n = 1e4
  CHECK(grr_variance(1.0, 10, 1e4) == doctest::Approx(3.63025e-4).epsilon(1e-4));
}

TEST_CASE("empirical estimator variance matches the analytic forms") {
  // The closed form is the rare-value limit q(1-q)/(n delta^2); the exact
  // per-value variance is pi(1-pi)/(n delta^2) with pi = q + delta f. Both
  // get checked: the closed form at f ~ 0, the exact form at f = 0.3.
  const double eps = 1.0;
  const std::uint32_t k = 10;
  const std::size_t n = 10000;
  const GrrParams params = grr_params(eps, k);
  const double f0 = 0.3;

  std::vector<Record> values(n);
  std::size_t heavy = static_cast<std::size_t>(f0 * n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = {i < heavy ? 0u : static_cast<std::uint32_t>(1 + (i % (k - 1)))};
  }

  const int sims = 2000;
  std::vector<double> est0(sims), est_rare(sims);
  RngStream root{31337};
  std::vector<double> counts(k);
  for (int s = 0; s < sims; ++s) {
    RngStream rng = root.child(s);
    std::fill(counts.begin(), counts.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      counts[grr_perturb(values[i][0], params, rng)] += 1.0;
    }
    const auto est = grr_estimate(counts, static_cast<double>(n), params);
    est0[s] = est[0];
    est_rare[s] = est[5];  // f = 0.7/9 ~ 0.078, near the rare-value regime
  }

  const auto s0 = testutil::mean_std(est0);
  const double exact0 =
      (params.q + params.delta * f0) * (1.0 - params.q - params.delta * f0) /
      (n * params.delta * params.delta);
  CHECK(s0.stdev * s0.stdev == doctest::Approx(exact0).epsilon(0.10));

  const auto sr = testutil::mean_std(est_rare);
  const double approx = grr_variance(eps, k, static_cast<double>(n));
  CHECK(sr.stdev * sr.stdev == doctest::Approx(approx).epsilon(0.15));
}

TEST_CASE("empirical unbiasedness within four standard deviations") {
  const double eps = 1.0;
  const std::uint32_t k = 4;
  const std::size_t n = 100000;
  const GrrParams params = grr_params(eps, k);
  const std::vector<double> f = {0.4, 0.3, 0.2, 0.1};

  RngStream rng{4242};
  std::vector<double> counts(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t v = testutil::draw_from(f, rng);
    counts[grr_perturb(v, params, rng)] += 1.0;
  }
  const auto est = grr_estimate(counts, static_cast<double>(n), params);
  const double bound = 4.0 * std::sqrt(grr_variance(eps, k, static_cast<double>(n)));
  for (std::uint32_t v = 0; v < k; ++v) {
    CHECK(std::abs(est[v] - f[v]) <= bound);
  }
}

TEST_CASE("grr_channel layout and ratio") {
  const GrrParams params = grr_params(std::log(3.0), 2);
  const ChannelMatrix channel = grr_channel(params);
  CHECK(channel.at(0, 0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(channel.at(0, 1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(channel.at(1, 0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(channel.at(1, 1) == doctest::Approx(0.75).epsilon(1e-12));

  for (double eps : {0.1, 0.7, 1.0, 3.0, 10.0}) {
    for (std::uint32_t k : {2u, 4u, 17u, 32u}) {
      const ChannelMatrix c = grr_channel(grr_params(eps, k));
      for (std::size_t x = 0; x < c.inputs; ++x) {
        double col = 0.0;
        for (std::size_t y = 0; y < c.outputs; ++y) col += c.at(y, x);
        CHECK(std::abs(col - 1.0) <= 1e-12);
      }
      CHECK(ldp_ratio(c) == doctest::Approx(std::exp(eps)).epsilon(1e-9));
    }
  }
}

TEST_CASE("ldp_ratio conventions for zeros") {
  ChannelMatrix identity;
  identity.outputs = identity.inputs = 3;
  identity.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  CHECK(std::isinf(ldp_ratio(identity)));

  ChannelMatrix uniform;
  uniform.outputs = uniform.inputs = 3;
  uniform.m.assign(9, 1.0 / 3.0);
  CHECK(ldp_ratio(uniform) == doctest::Approx(1.0).epsilon(1e-15));

  // a row of zeros contributes 0/0 = 1, not infinity
  ChannelMatrix dead_row;
  dead_row.outputs = dead_row.inputs = 2;
  dead_row.m = {1.0, 1.0, 0.0, 0.0};
  CHECK(ldp_ratio(dead_row) == doctest::Approx(1.0).epsilon(1e-15));
}
