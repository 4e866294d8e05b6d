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

#include "corrldp/pyopt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "corrldp/grr.hpp"

namespace corrldp {

namespace {

void check_probability_vector(const std::vector<double>& f, const char* name) {
  double sum = 0.0;
  for (double x : f) {
    if (x < -1e-9 || x > 1.0 + 1e-9) {
      throw ShapeError(std::string(name) + " is not a probability vector");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw ShapeError(std::string(name) + " does not sum to 1");
  }
}

}  // namespace

PairContext PairContext::make(std::vector<double> f_a, std::vector<double> f_b,
                              double epsilon, double n_prime) {
  if (f_a.size() != f_b.size()) {
    throw ShapeError("pair marginals must share one domain");
  }
  if (f_a.size() < 2) {
    throw InvalidDomain("pair context requires domain size >= 2");
  }
  if (n_prime < 1.0) {
    throw ShapeError("phase-two user count must be >= 1");
  }
  check_probability_vector(f_a, "f_a");
  check_probability_vector(f_b, "f_b");

  PairContext ctx;
  ctx.k_ = static_cast<std::uint32_t>(f_a.size());
  ctx.delta_ = grr_params(epsilon, ctx.k_).delta;
  ctx.n_prime_ = n_prime;
  ctx.f_a_ = std::move(f_a);
  ctx.f_b_ = std::move(f_b);
  return ctx;
}

double phase2_value_mse_general(const PairContext& ctx, std::uint32_t v, double p_y) {
  const double a = ctx.bias(v, p_y);
  const double pi = ctx.alpha(v) + ctx.beta(v) * p_y;
  const double var = pi * (1.0 - pi) / (ctx.n_prime() * ctx.delta() * ctx.delta());
  return a * a + var;
}

double phase2_value_mse(const PairContext& ctx, std::uint32_t v, double p_y) {
  if (ctx.k() != 2) return phase2_value_mse_general(ctx, v, p_y);
  const double a = ctx.bias(v, p_y);
  const double b = 0.5 * ctx.delta() * (ctx.a0(v) + p_y * ctx.e(v));
  const double var = (0.25 - b * b) / (ctx.n_prime() * ctx.delta() * ctx.delta());
  return a * a + var;
}

double avg_mse(const PairContext& ctx, double p_y) {
  double sum = 0.0;
  for (std::uint32_t v = 0; v < ctx.k(); ++v) {
    sum += phase2_value_mse(ctx, v, p_y);
  }
  return sum / static_cast<double>(ctx.k());
}

PyQuadratic avg_mse_quadratic(const PairContext& ctx) {
  // Per value: A^2 contributes d0^2/4 + (d0 e / 2) p + (e^2 / 4) p^2, and the
  // pi(1-pi) part contributes [alpha(1-alpha) + beta(1-2 alpha) p - beta^2 p^2]
  // / (n' delta^2).
  const double scale = 1.0 / (ctx.n_prime() * ctx.delta() * ctx.delta());
  PyQuadratic quad;
  for (std::uint32_t v = 0; v < ctx.k(); ++v) {
    const double d0 = ctx.d0(v);
    const double e = ctx.e(v);
    const double alpha = ctx.alpha(v);
    const double beta = ctx.beta(v);
    quad.c0 += 0.25 * d0 * d0 + alpha * (1.0 - alpha) * scale;
    quad.c1 += 0.5 * d0 * e + beta * (1.0 - 2.0 * alpha) * scale;
    quad.c2 += 0.25 * e * e - beta * beta * scale;
  }
  const double k = static_cast<double>(ctx.k());
  quad.c0 /= k;
  quad.c1 /= k;
  quad.c2 /= k;
  return quad;
}

double optimal_py(const PairContext& ctx) {
  const PyQuadratic quad = avg_mse_quadratic(ctx);
  const double k = static_cast<double>(ctx.k());
  const double sum_d1 = quad.c1 * k;
  const double sum_d2 = quad.c2 * k;
  if (std::abs(sum_d1) < 1e-12 && std::abs(sum_d2) < 1e-12) {
    return 0.5;  // objective flat in p_y
  }

  double candidates[3] = {0.0, 1.0, 0.0};
  int count = 2;
  if (sum_d2 > 0.0) {
    const double vertex = -sum_d1 / (2.0 * sum_d2);
    candidates[count++] = std::clamp(vertex, 0.0, 1.0);
  }

  double best = candidates[0];
  double best_value = avg_mse(ctx, best);
  for (int i = 1; i < count; ++i) {
    const double value = avg_mse(ctx, candidates[i]);
    if (value < best_value) {
      best_value = value;
      best = candidates[i];
    }
  }
  return best;
}

double simplified_py_ratio(const PairContext& ctx) {
  const double k = static_cast<double>(ctx.k());
  const double np = ctx.n_prime();
  double num = 0.0;
  double den = 0.0;
  for (std::uint32_t v = 0; v < ctx.k(); ++v) {
    const double d0 = ctx.d0(v);
    const double a0 = ctx.a0(v);
    const double e = ctx.e(v);
    num += d0 * e / (2.0 * k) - a0 * e / (2.0 * np * k);
    den += e * e / (4.0 * k) - e * e / (4.0 * np * k);
  }
  return num / den;
}

PairwisePyModel infer_py_matrix(const MarginalTable& phase1_marginals,
                                double epsilon, double n_prime) {
  const std::size_t d = phase1_marginals.attribute_count();
  if (d == 0) throw ShapeError("marginal table is empty");
  const std::size_t k = phase1_marginals.freqs[0].size();
  for (const auto& row : phase1_marginals.freqs) {
    if (row.size() != k) {
      throw HeterogeneousDomains("p_y inference requires one common domain size");
    }
  }
  PairwisePyModel model(d, 1.0);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t m = j + 1; m < d; ++m) {
      const PairContext ctx = PairContext::make(
          phase1_marginals.freqs[j], phase1_marginals.freqs[m], epsilon, n_prime);
      model.set(j, m, optimal_py(ctx));
    }
  }
  return model;
}

}  // namespace corrldp
