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

#include "corrldp/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <doctest.h>

#include "corrldp/dataset_io.hpp"
#include "corrldp/ingest.hpp"
#include "test_util.hpp"

using namespace corrldp;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.dataset.kind = DatasetSourceConfig::Kind::kSynth;
  config.dataset.synth = {2000, 2, 2, 0.9, 5};
  config.mechanisms = {MechanismId::kSpl, MechanismId::kRsFd, MechanismId::kRsRfd,
                       MechanismId::kCorrRr};
  config.epsilons = {1.0};
  config.phase1_fractions = {0.1, 0.4};
  config.repetitions = 5;
  config.master_seed = 99;
  return config;
}

bool rows_equal_ignoring_wall(const ResultRow& a, const ResultRow& b) {
  return a.mechanism == b.mechanism && a.epsilon == b.epsilon && a.d == b.d &&
         a.k == b.k && a.source == b.source &&
         a.phase1_fraction == b.phase1_fraction && a.mse_mean == b.mse_mean &&
         a.mse_std == b.mse_std && a.runs == b.runs;
}

}  // namespace

TEST_CASE("mse_metric anchors") {
  MarginalTable truth, est;
  truth.freqs = {{1.0, 0.0}};
  est.freqs = {{0.9, 0.1}};
  CHECK(mse_metric(truth, truth) == 0.0);
  CHECK(mse_metric(truth, est) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(mse_metric(truth, est) == mse_metric(est, truth));

  MarginalTable wide;
  wide.freqs = {{0.5, 0.5, 0.0}};
  CHECK_THROWS_AS(mse_metric(truth, wide), ShapeError);
}

TEST_CASE("amplified_epsilon formula and monotonicity") {
  CHECK(amplified_epsilon(1.7, 1) == doctest::Approx(1.7).epsilon(1e-12));
  // ln(4 (e - 1) + 1), evaluated independently
  const double expected = std::log(4.0 * (std::exp(1.0) - 1.0) + 1.0);
  CHECK(amplified_epsilon(1.0, 4) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(2.0635).epsilon(1e-4));
  double last = 0.0;
  for (std::size_t d = 1; d <= 10; ++d) {
    const double amp = amplified_epsilon(1.0, d);
    CHECK(amp > last);
    last = amp;
  }
  CHECK_THROWS_AS(amplified_epsilon(0.0, 2), InvalidBudget);
}

TEST_CASE("run_once is deterministic given the stream identity") {
  const Dataset data = gen_synthetic({500, 3, 2, 0.5, 8});
  for (MechanismId mech : {MechanismId::kSpl, MechanismId::kRsFd, MechanismId::kRsRfd,
                           MechanismId::kCorrRr}) {
    RngStream a{42, 1};
    RngStream b{42, 1};
    const MarginalTable t1 = run_once(data, mech, 1.0, 0.1, a);
    const MarginalTable t2 = run_once(data, mech, 1.0, 0.1, b);
    CHECK(t1.freqs == t2.freqs);
  }
}

TEST_CASE("run_once split boundaries") {
  const Dataset tiny = gen_synthetic({2, 2, 2, 0.5, 3});
  RngStream rng{1};
  // one user per phase is legal
  CHECK_NOTHROW(run_once(tiny, MechanismId::kCorrRr, 1.0, 0.5, rng));
  // a split that empties a phase is not
  RngStream rng2{1};
  CHECK_THROWS_AS(run_once(tiny, MechanismId::kCorrRr, 0.999, 0.01, rng2), SplitError);
  RngStream rng3{1};
  const Dataset small = gen_synthetic({5, 2, 2, 0.5, 3});
  CHECK_THROWS_AS(run_once(small, MechanismId::kCorrRr, 1.0, 0.01, rng3), SplitError);
}

TEST_CASE("baselines ignore the data correlation") {
  const std::size_t n = 3000;
  const Dataset low = gen_synthetic({n, 2, 2, 0.0, 71});
  const Dataset high = gen_synthetic({n, 2, 2, 0.9, 72});
  const MarginalTable truth_low = true_marginals(low);
  const MarginalTable truth_high = true_marginals(high);

  const int runs = 60;
  std::vector<double> mse_low(runs), mse_high(runs);
  RngStream root{515};
  for (int r = 0; r < runs; ++r) {
    RngStream a = root.child(0, r);
    RngStream b = root.child(1, r);
    mse_low[r] = mse_metric(truth_low, run_once(low, MechanismId::kSpl, 1.0, 0.1, a));
    mse_high[r] = mse_metric(truth_high, run_once(high, MechanismId::kSpl, 1.0, 0.1, b));
  }
  const auto sl = testutil::mean_std(mse_low);
  const auto sh = testutil::mean_std(mse_high);
  const double pooled_se = std::sqrt(sl.stdev * sl.stdev / runs +
                                     sh.stdev * sh.stdev / runs);
  CHECK(std::abs(sl.mean - sh.mean) < 2.5 * pooled_se);
}

TEST_CASE("run_experiment emits deterministic rows and flat baselines") {
  const ExperimentConfig config = small_config();
  const auto rows1 = run_experiment(config, 2);
  const auto rows2 = run_experiment(config, 1);
  REQUIRE(rows1.size() == rows2.size());
  for (std::size_t i = 0; i < rows1.size(); ++i) {
    CHECK(rows_equal_ignoring_wall(rows1[i], rows2[i]));
  }

  // mechanisms x epsilons x fractions rows
  CHECK(rows1.size() == 4 * 1 * 2);

  // baseline rows are identical across the fraction grid, wall time included
  for (const std::string mech : {"SPL", "RSFD", "RSRFD"}) {
    std::vector<ResultRow> rows;
    for (const auto& row : rows1) {
      if (row.mechanism == mech) rows.push_back(row);
    }
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].mse_mean == rows[1].mse_mean);
    CHECK(rows[0].mse_std == rows[1].mse_std);
    CHECK(rows[0].wall_ms == rows[1].wall_ms);
  }
}

TEST_CASE("single repetition yields zero spread") {
  ExperimentConfig config = small_config();
  config.repetitions = 1;
  config.phase1_fractions = {0.2};
  const auto rows = run_experiment(config, 1);
  for (const auto& row : rows) {
    CHECK(row.mse_std == 0.0);
    CHECK(row.runs == 1);
    CHECK(row.mse_mean >= 0.0);
    CHECK(std::isfinite(row.mse_mean));
  }
}

TEST_CASE("csv has the exact column contract") {
  ExperimentConfig config = small_config();
  config.repetitions = 1;
  config.mechanisms = {MechanismId::kSpl};
  config.phase1_fractions = {0.1};
  const auto rows = run_experiment(config, 1);
  const std::string csv = results_to_csv(rows);
  CHECK(csv.rfind(
            "mechanism,epsilon,d,k,source,phase1_fraction,mse_mean,mse_std,runs,wall_ms\n",
            0) == 0);
  CHECK(csv.find("SPL,1,2,2,rho=0.9,0.1,") != std::string::npos);
}

TEST_CASE("config json loads and validates") {
  const std::string path = "harness_config.json";
  {
    std::ofstream out(path);
    out << R"({
      "dataset": {"type": "synth", "n": 1000, "d": 2, "k": 2, "rho": 0.5, "seed": 3},
      "mechanisms": ["SPL", "CORR_RR"],
      "epsilons": [1.0, 3.0],
      "phase1_fractions": [0.1],
      "repetitions": 4,
      "seed": 17
    })";
  }
  const ExperimentConfig config = load_experiment_config(path);
  CHECK(config.mechanisms.size() == 2);
  CHECK(config.epsilons.size() == 2);
  CHECK(config.repetitions == 4);
  CHECK(config.master_seed == 17);
  std::remove(path.c_str());

  ExperimentConfig bad = small_config();
  bad.phase1_fractions = {0.0};
  CHECK_THROWS_AS(validate_config(bad), SplitError);
  bad = small_config();
  bad.epsilons = {};
  CHECK_THROWS_AS(validate_config(bad), ShapeError);
  bad = small_config();
  bad.mechanisms = {MechanismId::kGrr};
  CHECK_THROWS_AS(validate_config(bad), ShapeError);
}

TEST_CASE("experiment over a file-backed dataset") {
  const std::string csv_path = "harness_data.csv";
  const std::string meta_path = "harness_data.meta.json";
  const Dataset data = gen_synthetic({400, 2, 3, 0.5, 12});
  write_dataset_csv(data, csv_path);
  {
    std::ofstream meta(meta_path);
    meta << R"({"domains": [3, 3]})";
  }

  ExperimentConfig config;
  config.dataset.kind = DatasetSourceConfig::Kind::kFile;
  config.dataset.path = csv_path;
  config.dataset.name = "toy";
  config.mechanisms = {MechanismId::kCorrRr};
  config.epsilons = {1.0};
  config.phase1_fractions = {0.2};
  config.repetitions = 3;
  const auto rows = run_experiment(config, 1);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].source == "toy");
  CHECK(rows[0].d == 2);
  CHECK(rows[0].k == 3);
  std::remove(csv_path.c_str());
  std::remove(meta_path.c_str());
}

TEST_CASE("redrawing the dataset per repetition stays deterministic") {
  ExperimentConfig config = small_config();
  config.redraw_data = true;
  config.repetitions = 3;
  config.mechanisms = {MechanismId::kSpl};
  config.phase1_fractions = {0.1};
  const auto rows1 = run_experiment(config, 2);
  const auto rows2 = run_experiment(config, 1);
  REQUIRE(rows1.size() == rows2.size());
  for (std::size_t i = 0; i < rows1.size(); ++i) {
    CHECK(rows_equal_ignoring_wall(rows1[i], rows2[i]));
  }
}
