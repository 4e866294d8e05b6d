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
#include "corrldp/mechanisms.hpp"

namespace corrldp {

// Analytic context for one attribute pair in the second phase: marginals
// f_a, f_b over a common domain of size k, the full-budget GRR gap
// delta = p - q, and the phase-two user count n'.
//
// Per-value shorthand used throughout the closed forms:
//   d0(v) = 1 - f_a(v) - f_b(v)
//   a0(v) = f_a(v) - f_b(v)
//   e(v)  = 2 f_b(v) - 1
//   alpha(v) = (1 - delta)/k + (delta/2) [d0(v) + 2 f_a(v)]
//   beta(v)  = (delta/2) e(v)
// The phase-two report probability of value v is pi(v) = alpha(v) +
// beta(v) p_y, and the estimator bias is A(v) = [d0(v) + p_y e(v)] / 2.
class PairContext {
 public:
  static PairContext make(std::vector<double> f_a, std::vector<double> f_b,
                          double epsilon, double n_prime);

  std::uint32_t k() const { return k_; }
  double delta() const { return delta_; }
  double n_prime() const { return n_prime_; }
  const std::vector<double>& f_a() const { return f_a_; }
  const std::vector<double>& f_b() const { return f_b_; }

  double d0(std::uint32_t v) const { return 1.0 - f_a_[v] - f_b_[v]; }
  double a0(std::uint32_t v) const { return f_a_[v] - f_b_[v]; }
  double e(std::uint32_t v) const { return 2.0 * f_b_[v] - 1.0; }
  double alpha(std::uint32_t v) const {
    return (1.0 - delta_) / k_ + 0.5 * delta_ * (d0(v) + 2.0 * f_a_[v]);
  }
  double beta(std::uint32_t v) const { return 0.5 * delta_ * e(v); }
  double bias(std::uint32_t v, double p_y) const {
    return 0.5 * (d0(v) + p_y * e(v));
  }

 private:
  std::vector<double> f_a_;
  std::vector<double> f_b_;
  double delta_ = 0.0;
  std::uint32_t k_ = 0;
  double n_prime_ = 0.0;
};

// Mean squared error of the phase-two estimator for one value. At k = 2 this
// is the two-value closed form A^2 + (1/4 - B^2) / (n' delta^2) with
// B(v) = (delta/2)[a0(v) + p_y e(v)]; for k > 2 it is the general
// bias-plus-binomial form A^2 + pi(1 - pi) / (n' delta^2). The two coincide
// at k = 2, where B = pi - 1/2.
double phase2_value_mse(const PairContext& ctx, std::uint32_t v, double p_y);

// The pi(1 - pi) form for any k, kept separate so the k = 2 equivalence is
// testable.
double phase2_value_mse_general(const PairContext& ctx, std::uint32_t v, double p_y);

// Average of phase2_value_mse over the k values; the symmetric two-attribute
// pair objective. Quadratic in p_y.
double avg_mse(const PairContext& ctx, double p_y);

// avg_mse(p_y) = c0 + c1 p_y + c2 p_y^2, coefficients from the general form.
struct PyQuadratic {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};
PyQuadratic avg_mse_quadratic(const PairContext& ctx);

// Minimizer of avg_mse over [0, 1]: the quadratic vertex (when convex)
// compared against both endpoints. Returns 0.5 when the objective does not
// depend on p_y.
double optimal_py(const PairContext& ctx);

// The simplified printed ratio that drops every alpha- and delta-dependent
// variance term. Kept for comparison output only; optimal_py is the
// implemented minimizer, cross-checked against a dense grid.
double simplified_py_ratio(const PairContext& ctx);

// Builds the pairwise copy-probability model from phase-one marginal
// estimates: for every unordered attribute pair, the optimal p_y for the
// pair context at the full budget with n' phase-two users, stored
// symmetrically. Marginals must be normalized (clamp first) and all domains
// equal.
PairwisePyModel infer_py_matrix(const MarginalTable& phase1_marginals,
                                double epsilon, double n_prime);

}  // namespace corrldp
