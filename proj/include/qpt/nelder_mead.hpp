// Copyright 2026 The qpt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "qpt/common.hpp"
#include "qpt/errors.hpp"

namespace qpt {

struct NelderMeadResult {
  RVec x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Downhill simplex with standard coefficients (reflect 1, expand 2, contract
// 1/2, shrink 1/2). The initial simplex offsets each coordinate by 5% with an
// absolute floor of 1e-3. Non-finite objective values are tolerated during
// iteration (treated as +inf) but rejected at the seed. Deterministic: ties
// are broken by vertex insertion order.
template <typename F>
NelderMeadResult nelder_mead(F&& objective, const RVec& seed,
                             int max_iterations, double tolerance) {
  const auto n = seed.size();
  if (n < 1) throw invariant_error("nelder_mead: empty parameter vector");
  if (max_iterations < 1)
    throw invariant_error("nelder_mead: iteration budget must be positive");

  const double inf = std::numeric_limits<double>::infinity();
  auto eval = [&](const RVec& x) {
    const double v = objective(x);
    return std::isfinite(v) ? v : inf;
  };

  std::vector<RVec> xs(static_cast<std::size_t>(n) + 1, seed);
  for (Eigen::Index i = 0; i < n; ++i)
    xs[static_cast<std::size_t>(i) + 1](i) +=
        std::max(0.05 * std::abs(seed(i)), 1e-3);

  std::vector<double> fs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) fs[i] = eval(xs[i]);
  if (!std::isfinite(fs[0]))
    throw numerical_error("nelder_mead: objective is not finite at the seed");

  std::vector<std::size_t> order(xs.size());
  auto sort_order = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
  };

  NelderMeadResult result;
  int it = 0;
  for (; it < max_iterations; ++it) {
    sort_order();
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];

    double diameter = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      diameter = std::max(
          diameter, (xs[i] - xs[best]).template lpNorm<Eigen::Infinity>());
    const double spread = fs[worst] - fs[best];
    if (diameter < tolerance && spread < tolerance) {
      result.converged = true;
      break;
    }

    RVec centroid = RVec::Zero(n);
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (i != worst) centroid += xs[i];
    centroid /= static_cast<double>(n);

    const RVec reflected = centroid + (centroid - xs[worst]);
    const double fr = eval(reflected);

    if (fr < fs[best]) {
      const RVec expanded = centroid + 2.0 * (reflected - centroid);
      const double fe = eval(expanded);
      if (fe < fr) {
        xs[worst] = expanded;
        fs[worst] = fe;
      } else {
        xs[worst] = reflected;
        fs[worst] = fr;
      }
      continue;
    }
    if (fr < fs[second_worst]) {
      xs[worst] = reflected;
      fs[worst] = fr;
      continue;
    }
    if (fr < fs[worst]) {
      const RVec contracted = centroid + 0.5 * (reflected - centroid);
      const double fc = eval(contracted);
      if (fc <= fr) {
        xs[worst] = contracted;
        fs[worst] = fc;
        continue;
      }
    } else {
      const RVec contracted = centroid + 0.5 * (xs[worst] - centroid);
      const double fc = eval(contracted);
      if (fc < fs[worst]) {
        xs[worst] = contracted;
        fs[worst] = fc;
        continue;
      }
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {  // shrink toward the best
      if (i == best) continue;
      xs[i] = xs[best] + 0.5 * (xs[i] - xs[best]);
      fs[i] = eval(xs[i]);
    }
  }

  sort_order();
  result.x = xs[order.front()];
  result.value = fs[order.front()];
  result.iterations = it;
  return result;
}

}  // namespace qpt
