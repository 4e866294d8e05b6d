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

#include "corrldp/aggregation.hpp"

#include <cmath>
#include <string>

namespace corrldp {

namespace {

void check_batch(const ReportBatch& batch, std::span<const CategoricalDomain> domains) {
  if (batch.domains.size() != domains.size()) {
    throw ShapeError("batch attribute count does not match the domain list");
  }
  for (std::size_t j = 0; j < domains.size(); ++j) {
    if (batch.domains[j].size != domains[j].size) {
      throw ShapeError("batch domain " + std::to_string(j) +
                       " does not match the declared domain");
    }
  }
  for (const Record& report : batch.reports) {
    if (report.size() != domains.size()) {
      throw ShapeError("report length does not match the attribute count");
    }
  }
}

void check_counts(const std::vector<std::vector<double>>& counts, double n,
                  std::span<const CategoricalDomain> domains) {
  if (counts.size() != domains.size()) {
    throw ShapeError("tally table does not match the attribute count");
  }
  for (std::size_t j = 0; j < domains.size(); ++j) {
    if (counts[j].size() != domains[j].size) {
      throw ShapeError("tally row " + std::to_string(j) +
                       " does not match its domain size");
    }
    double total = 0.0;
    for (double c : counts[j]) total += c;
    if (std::abs(total - n) > 1e-6 * std::max(1.0, n)) {
      throw CountMismatch("attribute " + std::to_string(j) + " tallies sum to " +
                          std::to_string(total) + " but n = " + std::to_string(n));
    }
  }
}

}  // namespace

std::vector<std::vector<double>> tally_reports(std::span<const Record> reports,
                                               std::span<const CategoricalDomain> domains) {
  std::vector<std::vector<double>> counts(domains.size());
  for (std::size_t j = 0; j < domains.size(); ++j) {
    counts[j].assign(domains[j].size, 0.0);
  }
  for (const Record& report : reports) {
    if (report.size() != domains.size()) {
      throw ShapeError("report length does not match the attribute count");
    }
    for (std::size_t j = 0; j < report.size(); ++j) {
      if (report[j] >= domains[j].size) {
        throw DomainViolation("report value outside its domain", -1,
                              static_cast<std::ptrdiff_t>(j));
      }
      counts[j][report[j]] += 1.0;
    }
  }
  return counts;
}

MarginalTable spl_estimate_from_counts(const std::vector<std::vector<double>>& counts,
                                       double n, double epsilon,
                                       std::span<const CategoricalDomain> domains) {
  check_counts(counts, n, domains);
  const double per_attr = epsilon / static_cast<double>(domains.size());
  MarginalTable out;
  out.freqs.reserve(domains.size());
  for (std::size_t j = 0; j < domains.size(); ++j) {
    out.freqs.push_back(grr_estimate(counts[j], n, grr_params(per_attr, domains[j].size)));
  }
  return out;
}

MarginalTable spl_estimate(const ReportBatch& batch, double epsilon,
                           std::span<const CategoricalDomain> domains) {
  check_batch(batch, domains);
  return spl_estimate_from_counts(tally_reports(batch.reports, domains),
                                  static_cast<double>(batch.reports.size()), epsilon,
                                  domains);
}

MarginalTable rsfd_estimate_from_counts(const std::vector<std::vector<double>>& counts,
                                        double n, double epsilon,
                                        std::span<const CategoricalDomain> domains) {
  check_counts(counts, n, domains);
  const double d = static_cast<double>(domains.size());
  MarginalTable out;
  out.freqs.reserve(domains.size());
  for (std::size_t j = 0; j < domains.size(); ++j) {
    const GrrParams params = grr_params(epsilon, domains[j].size);
    const double k = static_cast<double>(domains[j].size);
    std::vector<double> row(domains[j].size);
    for (std::size_t v = 0; v < row.size(); ++v) {
      row[v] = d * (counts[j][v] / n - (d - 1.0) / (d * k) - params.q / d) / params.delta;
    }
    out.freqs.push_back(std::move(row));
  }
  return out;
}

MarginalTable rsfd_estimate(const ReportBatch& batch, double epsilon,
                            std::span<const CategoricalDomain> domains) {
  check_batch(batch, domains);
  return rsfd_estimate_from_counts(tally_reports(batch.reports, domains),
                                   static_cast<double>(batch.reports.size()), epsilon,
                                   domains);
}

MarginalTable rsrfd_estimate_from_counts(const std::vector<std::vector<double>>& counts,
                                         double n, double epsilon,
                                         std::span<const CategoricalDomain> domains,
                                         const PriorTable& prior) {
  if (!prior.shape_matches(domains)) {
    throw PriorShapeError("prior dimensions do not match the attribute domains");
  }
  check_counts(counts, n, domains);
  const double d = static_cast<double>(domains.size());
  MarginalTable out;
  out.freqs.reserve(domains.size());
  for (std::size_t j = 0; j < domains.size(); ++j) {
    const GrrParams params = grr_params(epsilon, domains[j].size);
    std::vector<double> row(domains[j].size);
    for (std::size_t v = 0; v < row.size(); ++v) {
      row[v] = d *
               (counts[j][v] / n - (d - 1.0) * prior.freqs[j][v] / d - params.q / d) /
               params.delta;
    }
    out.freqs.push_back(std::move(row));
  }
  return out;
}

MarginalTable rsrfd_estimate(const ReportBatch& batch, double epsilon,
                             std::span<const CategoricalDomain> domains,
                             const PriorTable& prior) {
  check_batch(batch, domains);
  return rsrfd_estimate_from_counts(tally_reports(batch.reports, domains),
                                    static_cast<double>(batch.reports.size()), epsilon,
                                    domains, prior);
}

MarginalTable phase2_estimate_from_counts(const std::vector<std::vector<double>>& counts,
                                          double n, double epsilon,
                                          std::span<const CategoricalDomain> domains) {
  check_counts(counts, n, domains);
  MarginalTable out;
  out.freqs.reserve(domains.size());
  for (std::size_t j = 0; j < domains.size(); ++j) {
    out.freqs.push_back(grr_estimate(counts[j], n, grr_params(epsilon, domains[j].size)));
  }
  return out;
}

MarginalTable corr_rr_estimate_from_counts(
    const std::vector<std::vector<double>>& phase1_counts, double n1,
    const std::vector<std::vector<double>>& phase2_counts, double n2,
    double epsilon, std::span<const CategoricalDomain> domains) {
  if (n1 <= 0.0 && n2 <= 0.0) {
    throw EmptyPhase("both phases are empty");
  }
  MarginalTable phase1;
  MarginalTable phase2;
  if (n1 > 0.0) phase1 = spl_estimate_from_counts(phase1_counts, n1, epsilon, domains);
  if (n2 > 0.0) phase2 = phase2_estimate_from_counts(phase2_counts, n2, epsilon, domains);

  const double n = n1 + n2;
  MarginalTable out;
  out.freqs.reserve(domains.size());
  for (std::size_t j = 0; j < domains.size(); ++j) {
    std::vector<double> row(domains[j].size, 0.0);
    for (std::size_t v = 0; v < row.size(); ++v) {
      double acc = 0.0;
      if (n1 > 0.0) acc += n1 * phase1.freqs[j][v];
      if (n2 > 0.0) acc += n2 * phase2.freqs[j][v];
      row[v] = acc / n;
    }
    out.freqs.push_back(std::move(row));
  }
  return out;
}

MarginalTable corr_rr_estimate(const ReportBatch& phase1, const ReportBatch& phase2,
                               double epsilon,
                               std::span<const CategoricalDomain> domains) {
  check_batch(phase1, domains);
  check_batch(phase2, domains);
  if (phase1.phase && *phase1.phase != Phase::kOne) {
    throw ShapeError("first batch is not tagged as phase one");
  }
  if (phase2.phase && *phase2.phase != Phase::kTwo) {
    throw ShapeError("second batch is not tagged as phase two");
  }
  const double n1 = static_cast<double>(phase1.reports.size());
  const double n2 = static_cast<double>(phase2.reports.size());
  if (n1 <= 0.0 && n2 <= 0.0) {
    throw EmptyPhase("both phases are empty");
  }
  auto counts1 = n1 > 0.0 ? tally_reports(phase1.reports, domains)
                          : std::vector<std::vector<double>>{};
  auto counts2 = n2 > 0.0 ? tally_reports(phase2.reports, domains)
                          : std::vector<std::vector<double>>{};
  if (n1 <= 0.0) counts1.assign(domains.size(), {});
  if (n2 <= 0.0) counts2.assign(domains.size(), {});
  return corr_rr_estimate_from_counts(counts1, n1, counts2, n2, epsilon, domains);
}

}  // namespace corrldp
