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

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "corrldp/dataset_io.hpp"
#include "corrldp/grr.hpp"
#include "corrldp/ingest.hpp"
#include "corrldp/pyopt.hpp"

namespace corrldp {

namespace {

// Stream-key tags so the shuffle, the users, and any dataset redraw consume
// unrelated substreams.
constexpr std::uint64_t kShuffleTag = 1;
constexpr std::uint64_t kUserTag = 2;
constexpr std::uint64_t kDataTag = 3;
constexpr std::uint64_t kCellTag = 4;
// Fraction slot used for mechanisms that ignore the phase-one fraction, so
// their draws cannot depend on the fraction grid.
constexpr std::uint64_t kNoFraction = 0xffffffffULL;

std::vector<GrrParams> per_attribute_params(double per_attr_epsilon,
                                            std::span<const CategoricalDomain> domains) {
  std::vector<GrrParams> params;
  params.reserve(domains.size());
  for (const auto& dom : domains) {
    params.push_back(grr_params(per_attr_epsilon, dom.size));
  }
  return params;
}

std::vector<std::uint32_t> seeded_shuffle(std::size_t n, RngStream rng) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = rng.uniform_int(static_cast<std::uint32_t>(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

std::vector<std::vector<double>> zero_counts(std::span<const CategoricalDomain> domains) {
  std::vector<std::vector<double>> counts(domains.size());
  for (std::size_t j = 0; j < domains.size(); ++j) counts[j].assign(domains[j].size, 0.0);
  return counts;
}

void tally_into(std::span<const std::uint32_t> report,
                std::vector<std::vector<double>>& counts) {
  for (std::size_t j = 0; j < report.size(); ++j) counts[j][report[j]] += 1.0;
}

std::string fmt_g(double value, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

struct Cell {
  MechanismId mech;
  double epsilon = 0.0;
  double fraction = 0.0;       // meaningful for the two-phase mechanism only
  std::uint64_t mech_slot = 0;
  std::uint64_t eps_slot = 0;
  std::uint64_t frac_slot = kNoFraction;
};

}  // namespace

double mse_metric(const MarginalTable& truth, const MarginalTable& estimate) {
  if (truth.freqs.size() != estimate.freqs.size()) {
    throw ShapeError("marginal tables have different attribute counts");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < truth.freqs.size(); ++j) {
    if (truth.freqs[j].size() != estimate.freqs[j].size()) {
      throw ShapeError("marginal tables disagree on attribute " + std::to_string(j));
    }
    double attr = 0.0;
    for (std::size_t v = 0; v < truth.freqs[j].size(); ++v) {
      const double diff = truth.freqs[j][v] - estimate.freqs[j][v];
      attr += diff * diff;
    }
    total += attr / static_cast<double>(truth.freqs[j].size());
  }
  return total / static_cast<double>(truth.freqs.size());
}

double amplified_epsilon(double epsilon, std::size_t d) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidBudget("privacy budget must be a positive finite real");
  }
  if (d < 1) throw InvalidDomain("attribute count must be >= 1");
  return std::log(static_cast<double>(d) * (std::exp(epsilon) - 1.0) + 1.0);
}

MarginalTable run_once(const Dataset& dataset, MechanismId mechanism, double epsilon,
                       double phase1_fraction, RngStream& rng, double prior_fraction) {
  const std::span<const CategoricalDomain> domains(dataset.domains);
  const std::size_t n = dataset.user_count();
  const std::size_t d = dataset.attribute_count();
  if (n < 1 || d < 1) throw ShapeError("dataset is empty");

  std::vector<std::uint32_t> out(d);

  switch (mechanism) {
    case MechanismId::kSpl: {
      const auto params = per_attribute_params(epsilon / static_cast<double>(d), domains);
      auto counts = zero_counts(domains);
      for (std::size_t i = 0; i < n; ++i) {
        RngStream user = rng.child(kUserTag, i);
        spl_perturb_into(dataset.records[i], params, user, out);
        tally_into(out, counts);
      }
      return spl_estimate_from_counts(counts, static_cast<double>(n), epsilon, domains);
    }
    case MechanismId::kRsFd: {
      const auto params = per_attribute_params(epsilon, domains);
      auto counts = zero_counts(domains);
      for (std::size_t i = 0; i < n; ++i) {
        RngStream user = rng.child(kUserTag, i);
        rsfd_perturb_into(dataset.records[i], params, user, out);
        tally_into(out, counts);
      }
      return rsfd_estimate_from_counts(counts, static_cast<double>(n), epsilon, domains);
    }
    case MechanismId::kRsRfd: {
      const std::size_t n_prior =
          std::max<std::size_t>(1, static_cast<std::size_t>(
                                       std::llround(prior_fraction * static_cast<double>(n))));
      if (n <= n_prior) {
        throw SplitError("prior slice would leave no users to collect from");
      }
      const auto perm = seeded_shuffle(n, rng.child(kShuffleTag));

      // Disjoint slice, privatized with the split-budget mechanism at the
      // same nominal budget, feeds the prior; raw data is never touched.
      const auto slice_params =
          per_attribute_params(epsilon / static_cast<double>(d), domains);
      auto slice_counts = zero_counts(domains);
      for (std::size_t pos = 0; pos < n_prior; ++pos) {
        const std::size_t i = perm[pos];
        RngStream user = rng.child(kUserTag, i);
        spl_perturb_into(dataset.records[i], slice_params, user, out);
        tally_into(out, slice_counts);
      }
      const PriorTable prior = clamp_normalize(spl_estimate_from_counts(
          slice_counts, static_cast<double>(n_prior), epsilon, domains));

      const auto params = per_attribute_params(epsilon, domains);
      auto counts = zero_counts(domains);
      for (std::size_t pos = n_prior; pos < n; ++pos) {
        const std::size_t i = perm[pos];
        RngStream user = rng.child(kUserTag, i);
        rsrfd_perturb_into(dataset.records[i], params, prior, user, out);
        tally_into(out, counts);
      }
      return rsrfd_estimate_from_counts(counts, static_cast<double>(n - n_prior), epsilon,
                                        domains, prior);
    }
    case MechanismId::kCorrRr: {
      const std::size_t n1 = static_cast<std::size_t>(
          std::llround(phase1_fraction * static_cast<double>(n)));
      if (n1 < 1 || n - n1 < 1) {
        throw SplitError("phase split leaves an empty phase");
      }
      const std::size_t n2 = n - n1;
      const auto perm = seeded_shuffle(n, rng.child(kShuffleTag));

      const auto phase1_params =
          per_attribute_params(epsilon / static_cast<double>(d), domains);
      auto counts1 = zero_counts(domains);
      for (std::size_t pos = 0; pos < n1; ++pos) {
        const std::size_t i = perm[pos];
        RngStream user = rng.child(kUserTag, i);
        spl_perturb_into(dataset.records[i], phase1_params, user, out);
        tally_into(out, counts1);
      }
      const MarginalTable phase1_raw = spl_estimate_from_counts(
          counts1, static_cast<double>(n1), epsilon, domains);
      const PairwisePyModel py = infer_py_matrix(clamp_normalize(phase1_raw), epsilon,
                                                 static_cast<double>(n2));

      const GrrParams phase2_params = grr_params(epsilon, domains[0].size);
      auto counts2 = zero_counts(domains);
      for (std::size_t pos = n1; pos < n; ++pos) {
        const std::size_t i = perm[pos];
        RngStream user = rng.child(kUserTag, i);
        corr_rr_phase2_perturb_into(dataset.records[i], phase2_params, py, user, out);
        tally_into(out, counts2);
      }
      return corr_rr_estimate_from_counts(counts1, static_cast<double>(n1), counts2,
                                          static_cast<double>(n2), epsilon, domains);
    }
    case MechanismId::kGrr:
      break;
  }
  throw ShapeError("mechanism is not a sweep mechanism: " + mechanism_name(mechanism));
}

void validate_config(const ExperimentConfig& config) {
  if (config.mechanisms.empty()) throw ShapeError("mechanism list is empty");
  for (MechanismId mech : config.mechanisms) {
    if (mech == MechanismId::kGrr) {
      throw ShapeError("grr is a primitive, not a sweep mechanism");
    }
  }
  if (config.epsilons.empty()) throw ShapeError("epsilon grid is empty");
  for (double eps : config.epsilons) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      throw InvalidBudget("epsilon grid entries must be positive finite reals");
    }
  }
  if (config.phase1_fractions.empty()) throw ShapeError("fraction grid is empty");
  for (double f : config.phase1_fractions) {
    if (!(f > 0.0 && f < 1.0)) {
      throw SplitError("phase-one fractions must lie in (0, 1)");
    }
  }
  if (config.repetitions < 1) throw ShapeError("repetitions must be >= 1");
  if (!(config.prior_fraction > 0.0 && config.prior_fraction < 1.0)) {
    throw SplitError("prior fraction must lie in (0, 1)");
  }
  if (config.dataset.kind == DatasetSourceConfig::Kind::kSynth) {
    if (config.redraw_data == false && config.dataset.synth.n < 2) {
      throw ShapeError("synthetic dataset needs at least two users");
    }
  }
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, int workers) {
  validate_config(config);

  Dataset base;
  std::string source = config.dataset.name;
  if (config.dataset.kind == DatasetSourceConfig::Kind::kSynth) {
    base = gen_synthetic(config.dataset.synth);
    if (source.empty()) source = "rho=" + fmt_g(config.dataset.synth.rho);
  } else {
    base = read_dataset_csv(config.dataset.path);
    if (source.empty()) source = config.dataset.path;
  }
  validate_dataset(base);
  const MarginalTable base_truth = true_marginals(base);

  // Cells: one per (mechanism, epsilon) for baselines, one per
  // (mechanism, epsilon, fraction) for the two-phase mechanism.
  std::vector<Cell> cells;
  for (std::size_t mi = 0; mi < config.mechanisms.size(); ++mi) {
    const MechanismId mech = config.mechanisms[mi];
    for (std::size_t ei = 0; ei < config.epsilons.size(); ++ei) {
      if (mech == MechanismId::kCorrRr) {
        for (std::size_t fi = 0; fi < config.phase1_fractions.size(); ++fi) {
          cells.push_back(Cell{mech, config.epsilons[ei], config.phase1_fractions[fi],
                               static_cast<std::uint64_t>(mech), ei, fi});
        }
      } else {
        cells.push_back(Cell{mech, config.epsilons[ei], config.phase1_fractions[0],
                             static_cast<std::uint64_t>(mech), ei, kNoFraction});
      }
    }
  }

  const int reps = config.repetitions;
  const std::size_t task_count = cells.size() * static_cast<std::size_t>(reps);
  std::vector<double> mse(task_count, 0.0);
  std::vector<double> task_ms(task_count, 0.0);

  const RngStream master{config.master_seed};
  const bool redraw = config.redraw_data &&
                      config.dataset.kind == DatasetSourceConfig::Kind::kSynth;

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&]() {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= task_count) return;
      const Cell& cell = cells[task / reps];
      const std::uint64_t rep = task % reps;
      try {
        const auto start = std::chrono::steady_clock::now();
        RngStream rng = master.child(kCellTag, cell.mech_slot, cell.eps_slot,
                                     cell.frac_slot, rep);
        const Dataset* data = &base;
        const MarginalTable* truth = &base_truth;
        Dataset local_data;
        MarginalTable local_truth;
        if (redraw) {
          SynthSpec spec = config.dataset.synth;
          spec.seed = rng.child(kDataTag).next_u64();
          local_data = gen_synthetic(spec);
          local_truth = true_marginals(local_data);
          data = &local_data;
          truth = &local_truth;
        }
        MarginalTable estimate = run_once(*data, cell.mech, cell.epsilon, cell.fraction,
                                          rng, config.prior_fraction);
        if (config.clamp_before_mse) estimate = clamp_normalize(estimate);
        mse[task] = mse_metric(*truth, estimate);
        task_ms[task] = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(task_count);
        return;
      }
    }
  };

  std::size_t worker_count = workers > 0
                                 ? static_cast<std::size_t>(workers)
                                 : std::max(1u, std::thread::hardware_concurrency());
  worker_count = std::min(worker_count, task_count);
  std::vector<std::thread> pool;
  pool.reserve(worker_count);
  for (std::size_t w = 0; w < worker_count; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  // Per-cell statistics, then rows in deterministic grid order with baseline
  // rows replicated across the fraction grid.
  struct CellStats {
    double mean = 0.0;
    double stdev = 0.0;
    double wall = 0.0;
  };
  std::vector<CellStats> stats(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    double sum = 0.0;
    double wall = 0.0;
    for (int r = 0; r < reps; ++r) {
      sum += mse[c * reps + r];
      wall += task_ms[c * reps + r];
    }
    const double mean = sum / reps;
    double ss = 0.0;
    for (int r = 0; r < reps; ++r) {
      const double diff = mse[c * reps + r] - mean;
      ss += diff * diff;
    }
    stats[c].mean = mean;
    stats[c].stdev = reps > 1 ? std::sqrt(ss / (reps - 1)) : 0.0;
    stats[c].wall = wall;
  }

  const std::size_t d = base.attribute_count();
  std::uint32_t k = base.domains[0].size;
  for (const auto& dom : base.domains) k = std::max(k, dom.size);

  std::vector<ResultRow> rows;
  std::size_t cell_index = 0;
  for (std::size_t mi = 0; mi < config.mechanisms.size(); ++mi) {
    const MechanismId mech = config.mechanisms[mi];
    for (std::size_t ei = 0; ei < config.epsilons.size(); ++ei) {
      if (mech == MechanismId::kCorrRr) {
        for (std::size_t fi = 0; fi < config.phase1_fractions.size(); ++fi) {
          const CellStats& s = stats[cell_index++];
          rows.push_back(ResultRow{mechanism_name(mech), config.epsilons[ei], d, k,
                                   source, config.phase1_fractions[fi], s.mean, s.stdev,
                                   reps, s.wall});
        }
      } else {
        const CellStats& s = stats[cell_index++];
        for (double fraction : config.phase1_fractions) {
          rows.push_back(ResultRow{mechanism_name(mech), config.epsilons[ei], d, k,
                                   source, fraction, s.mean, s.stdev, reps, s.wall});
        }
      }
    }
  }
  return rows;
}

std::string results_to_csv(std::span<const ResultRow> rows) {
  std::string csv =
      "mechanism,epsilon,d,k,source,phase1_fraction,mse_mean,mse_std,runs,wall_ms\n";
  for (const ResultRow& row : rows) {
    csv += row.mechanism;
    csv += ',' + fmt_g(row.epsilon);
    csv += ',' + std::to_string(row.d);
    csv += ',' + std::to_string(row.k);
    csv += ',' + row.source;
    csv += ',' + fmt_g(row.phase1_fraction);
    csv += ',' + fmt_g(row.mse_mean);
    csv += ',' + fmt_g(row.mse_std);
    csv += ',' + std::to_string(row.runs);
    csv += ',' + std::to_string(static_cast<long long>(std::llround(row.wall_ms)));
    csv += '\n';
  }
  return csv;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("could not open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("could not parse config json: " + std::string(e.what()));
  }

  ExperimentConfig config;
  const auto& ds = doc.at("dataset");
  const std::string type = ds.value("type", std::string("synth"));
  if (type == "synth") {
    config.dataset.kind = DatasetSourceConfig::Kind::kSynth;
    config.dataset.synth.n = ds.at("n").get<std::size_t>();
    config.dataset.synth.d = ds.at("d").get<std::size_t>();
    config.dataset.synth.k = ds.at("k").get<std::uint32_t>();
    config.dataset.synth.rho = ds.at("rho").get<double>();
    config.dataset.synth.seed = ds.value("seed", 0ull);
  } else if (type == "file") {
    config.dataset.kind = DatasetSourceConfig::Kind::kFile;
    config.dataset.path = ds.at("path").get<std::string>();
  } else {
    throw ShapeError("dataset type must be synth or file");
  }
  config.dataset.name = ds.value("name", std::string());

  for (const auto& name : doc.at("mechanisms")) {
    config.mechanisms.push_back(mechanism_from_name(name.get<std::string>()));
  }
  config.epsilons = doc.at("epsilons").get<std::vector<double>>();
  if (doc.contains("phase1_fractions")) {
    config.phase1_fractions = doc["phase1_fractions"].get<std::vector<double>>();
  }
  config.repetitions = doc.value("repetitions", 200);
  config.master_seed = doc.value("seed", 0ull);
  config.clamp_before_mse = doc.value("clamp_before_mse", false);
  config.prior_fraction = doc.value("prior_fraction", 0.1);
  config.redraw_data = doc.value("redraw_data", false);
  validate_config(config);
  return config;
}

}  // namespace corrldp
