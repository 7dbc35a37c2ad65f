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

#include <algorithm>
#include <cmath>
#include <random>

#include "cdmpo/errors.hpp"
#include "cdmpo/varopt.hpp"
#include "ritz_detail.hpp"

namespace cdmpo {
namespace {

// Orthonormal basis for the column span of `s` (unit-normalizing columns
// first so that small residual directions are not mistaken for dependence).
Matrix orthonormal_span(Matrix s) {
  for (Eigen::Index c = 0; c < s.cols(); ++c) {
    const double n = s.col(c).norm();
    if (n > 0.0) s.col(c) /= n;
  }
  const Matrix g = s.adjoint() * s;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (g + g.adjoint()));
  const RealVector& mu = eig.eigenvalues();
  const double mu_max = mu.maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    if (mu(k) > 1e-12 * mu_max) keep.push_back(k);
  }
  Matrix t(s.cols(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    t.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(keep[c]) / std::sqrt(mu(keep[c]));
  }
  return s * t;
}

}  // namespace

LobpcgResult lobpcg_smallest(const BlockOperator& apply_a, const BlockOperator& apply_b,
                             std::size_t dim, double a_norm, double b_norm,
                             const LobpcgOptions& opts) {
  if (dim == 0) throw Error(ErrorCode::EmptyInput, "eigenproblem has dimension 0");
  const auto n = static_cast<Eigen::Index>(dim);
  const auto b = static_cast<Eigen::Index>(std::clamp<std::size_t>(opts.block, 1, dim));
  LobpcgResult out;

  auto finish_block = [&](const Matrix& s, const Matrix& as, const Matrix& bs) {
    const detail::ReducedEigen re =
        detail::reduced_eigen(s.adjoint() * as, s.adjoint() * bs, 1e-14);
    if (re.kept == 0) throw Error(ErrorCode::NoConvergence, "search space collapsed");
    const Eigen::Index k = std::min(b, re.kept);
    const Matrix c = re.vectors.leftCols(k);
    out.values = re.values.head(k);
    out.vectors = s * c;
    const Matrix r = as * c - (bs * c) * out.values.cast<cplx>().asDiagonal();
    out.residual_norms = r.colwise().norm().transpose();
    return r;
  };
  auto tolerance = [&](double theta) { return opts.tol * (a_norm + std::abs(theta) * b_norm); };

  if (3 * b >= n) {
    const Matrix eye = Matrix::Identity(n, n);
    finish_block(eye, apply_a(eye), apply_b(eye));
    out.converged = out.residual_norms(0) <= tolerance(out.values(0));
    return out;
  }

  std::mt19937_64 gen(opts.seed);
  std::normal_distribution<double> normal;
  Matrix x(n, b);
  for (Eigen::Index c = 0; c < b; ++c)
    for (Eigen::Index r = 0; r < n; ++r) x(r, c) = cplx{normal(gen), normal(gen)};

  Matrix w;
  Matrix p;
  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    Matrix s(n, x.cols() + w.cols() + p.cols());
    s << x, w, p;
    s = orthonormal_span(s);
    const Matrix r = finish_block(s, apply_a(s), apply_b(s));
    out.iterations = it;
    if (out.residual_norms(0) <= tolerance(out.values(0))) {
      out.converged = true;
      return out;
    }
    p = it > 1 || w.cols() > 0 ? Matrix(out.vectors - x) : Matrix();
    x = out.vectors;
    w = r;
  }
  return out;
}

}  // namespace cdmpo
