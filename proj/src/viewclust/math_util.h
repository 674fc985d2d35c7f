// Copyright 2026 The viewclust Authors
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
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace viewclust {

// Percentile with linear interpolation between order statistics.
// p in [0, 100]; values need not be sorted.
inline double Percentile(std::vector<double> values, double p) {
  if (values.empty()) {
    throw std::invalid_argument("Percentile: empty sample");
  }
  std::sort(values.begin(), values.end());
  const double rank = p / 100.0 * static_cast<double>(values.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(rank));
  const size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

struct PolyFit {
  std::vector<double> coeffs;  // ascending powers
  double r2 = 0.0;

  double Eval(double x) const {
    double acc = 0.0;
    double pow_x = 1.0;
    for (const double c : coeffs) {
      acc += c * pow_x;
      pow_x *= x;
    }
    return acc;
  }
};

// Least-squares polynomial fit of the given degree via normal equations.
inline PolyFit FitPolynomial(const std::vector<double>& xs,
                             const std::vector<double>& ys, int degree) {
  if (xs.size() != ys.size() || xs.size() < static_cast<size_t>(degree + 1)) {
    throw std::invalid_argument("FitPolynomial: not enough samples");
  }
  const int n = static_cast<int>(xs.size());
  Eigen::MatrixXd design(n, degree + 1);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    double pow_x = 1.0;
    for (int d = 0; d <= degree; ++d) {
      design(i, d) = pow_x;
      pow_x *= xs[i];
    }
    rhs(i) = ys[i];
  }
  const Eigen::VectorXd sol = design.colPivHouseholderQr().solve(rhs);

  PolyFit fit;
  fit.coeffs.assign(sol.data(), sol.data() + sol.size());

  const double mean = rhs.mean();
  double ss_tot = 0.0;
  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double pred = fit.Eval(xs[i]);
    ss_tot += (ys[i] - mean) * (ys[i] - mean);
    ss_res += (ys[i] - pred) * (ys[i] - pred);
  }
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace viewclust
