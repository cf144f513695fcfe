// Copyright 2026 The dptext Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPTEXT_DP_CORE_H_
#define DPTEXT_DP_CORE_H_

#include <cmath>

#include <Eigen/Dense>

#include "dptext/rng.h"

namespace dptext {

// `dim` i.i.d. draws from Laplace(0, scale) by inverse CDF:
//   y = -scale * sgn(u) * ln(1 - 2|u|),  u uniform on (-0.5, 0.5).
// Consumes exactly `dim` uniforms from `rng`.
Eigen::VectorXd SampleLaplaceVector(Eigen::Index dim, double scale, Rng& rng);

// Exponential-mechanism output distribution
//   p_i = exp(eps * s_i / (2 du)) / sum_j exp(eps * s_j / (2 du))
// evaluated with a max shift so large eps does not overflow.
template <typename Derived>
Eigen::VectorXd ExpMechanismProbs(const Eigen::MatrixBase<Derived>& scores,
                                  double epsilon, double delta_u);

// Draws index i with probability probs[i] (inverse CDF over cumulative sums).
template <typename Derived>
Eigen::Index SampleCategorical(const Eigen::MatrixBase<Derived>& probs,
                               Rng& rng);

// x -> (x - min) / (max - min); all zeros when max == min.
template <typename Derived>
Eigen::VectorXd MinMaxNormalize(const Eigen::MatrixBase<Derived>& values);

// Checks the ProbabilityVector invariant: entries in [0, 1], sum within
// `tol` of 1.
template <typename Derived>
bool IsProbabilityVector(const Eigen::MatrixBase<Derived>& probs,
                         double tol = 1e-9);

namespace internal {
void CheckScores(Eigen::Index size, bool all_finite, double epsilon,
                 double delta_u);
void CheckNonEmptyFinite(Eigen::Index size, bool all_finite, const char* what);
}  // namespace internal

template <typename Derived>
Eigen::VectorXd ExpMechanismProbs(const Eigen::MatrixBase<Derived>& scores,
                                  double epsilon, double delta_u) {
  const Eigen::VectorXd s = scores.template cast<double>();
  internal::CheckScores(s.size(), s.allFinite(), epsilon, delta_u);
  const double factor = epsilon / (2.0 * delta_u);
  Eigen::VectorXd w = (factor * (s.array() - s.maxCoeff())).exp().matrix();
  return w / w.sum();
}

template <typename Derived>
Eigen::Index SampleCategorical(const Eigen::MatrixBase<Derived>& probs,
                               Rng& rng) {
  const double u = rng.Uniform01();
  double cumulative = 0.0;
  Eigen::Index last_positive = 0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    const double p = static_cast<double>(probs(i));
    if (p <= 0.0) continue;
    cumulative += p;
    last_positive = i;
    if (u < cumulative) return i;
  }
  // Rounding left the total a hair below u.
  return last_positive;
}

template <typename Derived>
Eigen::VectorXd MinMaxNormalize(const Eigen::MatrixBase<Derived>& values) {
  const Eigen::VectorXd v = values.template cast<double>();
  internal::CheckNonEmptyFinite(v.size(), v.allFinite(), "MinMaxNormalize");
  const double lo = v.minCoeff();
  const double span = v.maxCoeff() - lo;
  if (span == 0.0) return Eigen::VectorXd::Zero(v.size());
  return ((v.array() - lo) / span).min(1.0).max(0.0).matrix();
}

template <typename Derived>
bool IsProbabilityVector(const Eigen::MatrixBase<Derived>& probs, double tol) {
  if (probs.size() == 0) return false;
  const Eigen::VectorXd p = probs.template cast<double>();
  if (!p.allFinite()) return false;
  if ((p.array() < 0.0).any() || (p.array() > 1.0).any()) return false;
  return std::abs(p.sum() - 1.0) <= tol;
}

}  // namespace dptext

#endif  // DPTEXT_DP_CORE_H_
