// Copyright 2026 The cdmpo Authors
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

#include <cmath>
#include <vector>

#include "cdmpo/linalg.hpp"

namespace cdmpo::detail {

/// Eigenpairs of A y = theta B y restricted to the range of B: eigenvectors of
/// B with eigenvalue <= drop_tol * max are discarded first. Columns of
/// `vectors` are B-orthonormal, values ascending.
struct ReducedEigen {
  RealVector values;
  Matrix vectors;
  Eigen::Index kept = 0;
};

inline ReducedEigen reduced_eigen(const Matrix& a, const Matrix& b, double drop_tol) {
  const Matrix bh = 0.5 * (b + b.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> eb(bh);
  const RealVector& mu = eb.eigenvalues();
  const double mu_max = mu.size() > 0 ? mu.maxCoeff() : 0.0;
  ReducedEigen out;
  if (mu_max <= 0.0) return out;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    if (mu(k) > drop_tol * mu_max && mu(k) > 0.0) keep.push_back(k);
  }
  out.kept = static_cast<Eigen::Index>(keep.size());
  if (keep.empty()) return out;
  Matrix t(b.rows(), out.kept);
  for (Eigen::Index c = 0; c < out.kept; ++c) {
    t.col(c) = eb.eigenvectors().col(keep[static_cast<std::size_t>(c)]) /
               std::sqrt(mu(keep[static_cast<std::size_t>(c)]));
  }
  Matrix reduced = t.adjoint() * a * t;
  reduced = 0.5 * (reduced + reduced.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> ea(reduced);
  out.values = ea.eigenvalues();
  out.vectors = t * ea.eigenvectors();
  return out;
}

}  // namespace cdmpo::detail
