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

#include "dptext/dp_core.h"

#include <cmath>
#include <string>

#include "dptext/errors.h"

namespace dptext {

Eigen::VectorXd SampleLaplaceVector(Eigen::Index dim, double scale, Rng& rng) {
  if (dim < 1) throw ContractError("SampleLaplaceVector: dim must be >= 1");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw ContractError("SampleLaplaceVector: scale must be positive and finite");
  }
  Eigen::VectorXd out(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double u = rng.Uniform01() - 0.5;
    const double sign = u < 0.0 ? -1.0 : 1.0;
    out(k) = -scale * sign * std::log1p(-2.0 * std::abs(u));
  }
  return out;
}

namespace internal {

void CheckScores(Eigen::Index size, bool all_finite, double epsilon,
                 double delta_u) {
  CheckNonEmptyFinite(size, all_finite, "ExpMechanismProbs");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw ContractError("ExpMechanismProbs: epsilon must be finite and >= 0");
  }
  if (!(delta_u > 0.0)) {
    throw ContractError("ExpMechanismProbs: sensitivity must be positive");
  }
}

void CheckNonEmptyFinite(Eigen::Index size, bool all_finite, const char* what) {
  if (size == 0) throw ContractError(std::string(what) + ": empty input");
  if (!all_finite) {
    throw ContractError(std::string(what) + ": non-finite input");
  }
}

}  // namespace internal
}  // namespace dptext
