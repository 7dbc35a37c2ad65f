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

#include "cdmpo/mps.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cdmpo/errors.hpp"

namespace cdmpo {
namespace {

struct ThinQr {
  Matrix q;
  Matrix r;
};

ThinQr thin_qr(const Matrix& m) {
  const Eigen::Index k = std::min(m.rows(), m.cols());
  Eigen::HouseholderQR<Matrix> qr(m);
  return {qr.householderQ() * Matrix::Identity(m.rows(), k),
          qr.matrixQR().topRows(k).triangularView<Eigen::Upper>()};
}

std::size_t qubit_count(Eigen::Index dim) {
  std::size_t n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim || dim < 2) {
    throw Error(ErrorCode::DimensionError,
                "state dimension " + std::to_string(dim) + " is not 2^N with N >= 1");
  }
  return n;
}

}  // namespace

Matrix MpsTensor::slice(std::size_t s) const {
  Matrix m(static_cast<Eigen::Index>(left_), static_cast<Eigen::Index>(right_));
  for (std::size_t a = 0; a < left_; ++a)
    for (std::size_t b = 0; b < right_; ++b)
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = (*this)(a, b, s);
  return m;
}

Matrix MpsTensor::left_matrix() const {
  Matrix m(static_cast<Eigen::Index>(left_ * 2), static_cast<Eigen::Index>(right_));
  for (std::size_t a = 0; a < left_; ++a)
    for (std::size_t b = 0; b < right_; ++b)
      for (std::size_t s = 0; s < 2; ++s)
        m(static_cast<Eigen::Index>(a * 2 + s), static_cast<Eigen::Index>(b)) = (*this)(a, b, s);
  return m;
}

MpsTensor MpsTensor::from_left_matrix(const Matrix& m, std::size_t left) {
  MpsTensor t(left, static_cast<std::size_t>(m.cols()));
  for (std::size_t a = 0; a < left; ++a)
    for (std::size_t b = 0; b < t.right_; ++b)
      for (std::size_t s = 0; s < 2; ++s)
        t(a, b, s) = m(static_cast<Eigen::Index>(a * 2 + s), static_cast<Eigen::Index>(b));
  return t;
}

Matrix MpsTensor::right_matrix() const {
  Matrix m(static_cast<Eigen::Index>(left_), static_cast<Eigen::Index>(right_ * 2));
  for (std::size_t a = 0; a < left_; ++a)
    for (std::size_t b = 0; b < right_; ++b)
      for (std::size_t s = 0; s < 2; ++s)
        m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b * 2 + s)) = (*this)(a, b, s);
  return m;
}

MpsTensor MpsTensor::from_right_matrix(const Matrix& m, std::size_t right) {
  MpsTensor t(static_cast<std::size_t>(m.rows()), right);
  for (std::size_t a = 0; a < t.left_; ++a)
    for (std::size_t b = 0; b < right; ++b)
      for (std::size_t s = 0; s < 2; ++s)
        t(a, b, s) = m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b * 2 + s));
  return t;
}

std::vector<std::size_t> Mps::bond_dims() const {
  std::vector<std::size_t> dims;
  if (tensors.empty()) return dims;
  dims.push_back(tensors.front().left());
  for (const auto& a : tensors) dims.push_back(a.right());
  return dims;
}

void Mps::validate() const {
  if (tensors.empty()) throw Error(ErrorCode::DimensionError, "MPS has no sites");
  if (tensors.front().left() != 1 || tensors.back().right() != 1) {
    throw Error(ErrorCode::DimensionError, "boundary bond dimensions must be 1");
  }
  for (std::size_t j = 0; j + 1 < tensors.size(); ++j) {
    if (tensors[j].right() != tensors[j + 1].left()) {
      throw Error(ErrorCode::DimensionError,
                  "bond " + std::to_string(j + 1) + " dimensions disagree");
    }
  }
  if (gauge.size() != tensors.size()) {
    throw Error(ErrorCode::DimensionError, "one gauge tag per site required");
  }
}

double left_gauge_error(const MpsTensor& a) {
  const Matrix m = a.left_matrix();
  return (m.adjoint() * m - Matrix::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
}

double right_gauge_error(const MpsTensor& a) {
  const Matrix m = a.right_matrix();
  return (m * m.adjoint() - Matrix::Identity(m.rows(), m.rows())).cwiseAbs().maxCoeff();
}

double max_right_gauge_error(const Mps& m) {
  double err = 0.0;
  for (const auto& a : m.tensors) err = std::max(err, right_gauge_error(a));
  return err;
}

DenseToMpsResult dense_to_mps(const Vector& state, std::size_t chi_max) {
  const std::size_t n = qubit_count(state.size());
  if (std::abs(state.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::NotNormalized, "input state is not normalized");
  }
  const std::size_t cap = std::max<std::size_t>(chi_max, 1);

  Mps mps;
  Matrix rest = state.transpose();  // 1 x 2^N
  std::size_t left = 1;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const Eigen::Index cols = rest.size() / static_cast<Eigen::Index>(left * 2);
    // Row (a, s), column = remaining sites; row-major flattening of `rest`.
    Matrix m(static_cast<Eigen::Index>(left * 2), cols);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rest(0, r * cols + c);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& s = svd.singularValues();
    Eigen::Index keep = 0;
    while (keep < s.size() && static_cast<std::size_t>(keep) < cap && s(keep) > 1e-14 * s(0)) {
      ++keep;
    }
    keep = std::max<Eigen::Index>(keep, 1);
    mps.tensors.push_back(MpsTensor::from_left_matrix(svd.matrixU().leftCols(keep), left));
    const Matrix sv = s.head(keep).asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
    rest.resize(1, sv.size());
    for (Eigen::Index r = 0; r < sv.rows(); ++r)
      for (Eigen::Index c = 0; c < sv.cols(); ++c) rest(0, r * sv.cols() + c) = sv(r, c);
    left = static_cast<std::size_t>(keep);
  }
  MpsTensor last(left, 1);
  for (std::size_t a = 0; a < left; ++a)
    for (std::size_t s = 0; s < 2; ++s)
      last(a, 0, s) = rest(0, static_cast<Eigen::Index>(a * 2 + s));
  const double norm = rest.norm();
  for (auto& x : last.data()) x /= norm;
  mps.tensors.push_back(std::move(last));
  mps.gauge.assign(n, Gauge::left_canonical);
  mps.normalized = true;

  DenseToMpsResult out;
  out.overlap = std::abs(mps_to_dense(mps, n).dot(state));
  out.mps = std::move(mps);
  return out;
}

Vector mps_to_dense(const Mps& m, std::size_t dense_limit) {
  m.validate();
  if (m.n_sites() > dense_limit) {
    throw Error(ErrorCode::TooLarge, std::to_string(m.n_sites()) +
                                         " sites exceed the dense limit of " +
                                         std::to_string(dense_limit));
  }
  // partial[b] is the amplitude vector of the prefix ending in right bond b.
  std::vector<Vector> partial(1, Vector::Ones(1));
  for (const auto& a : m.tensors) {
    const Eigen::Index dim = partial.front().size();
    std::vector<Vector> next(a.right(), Vector::Zero(dim * 2));
    for (std::size_t b = 0; b < a.right(); ++b) {
      for (std::size_t l = 0; l < a.left(); ++l) {
        for (Eigen::Index i = 0; i < dim; ++i) {
          next[b](2 * i) += partial[l](i) * a(l, b, 0);
          next[b](2 * i + 1) += partial[l](i) * a(l, b, 1);
        }
      }
    }
    partial = std::move(next);
  }
  return partial.front();
}

Mps canonicalize_mps(const Mps& m, Direction direction) {
  m.validate();
  Mps out = m;
  const std::size_t n = out.n_sites();
  if (direction == Direction::left) {
    for (std::size_t j = 0; j < n; ++j) {
      const ThinQr f = thin_qr(out.tensors[j].left_matrix());
      out.tensors[j] = MpsTensor::from_left_matrix(f.q, out.tensors[j].left());
      if (j + 1 < n) {
        out.tensors[j + 1] = MpsTensor::from_right_matrix(
            f.r * out.tensors[j + 1].right_matrix(), out.tensors[j + 1].right());
      } else {
        for (auto& x : out.tensors[j].data()) x *= f.r(0, 0);
      }
      out.gauge[j] = Gauge::left_canonical;
    }
  } else {
    for (std::size_t j = n; j-- > 0;) {
      const ThinQr f = thin_qr(out.tensors[j].right_matrix().adjoint());
      out.tensors[j] = MpsTensor::from_right_matrix(f.q.adjoint(), out.tensors[j].right());
      const Matrix l = f.r.adjoint();
      if (j > 0) {
        out.tensors[j - 1] = MpsTensor::from_left_matrix(out.tensors[j - 1].left_matrix() * l,
                                                         out.tensors[j - 1].left());
      } else {
        for (auto& x : out.tensors[j].data()) x *= l(0, 0);
      }
      out.gauge[j] = Gauge::right_canonical;
    }
  }
  return out;
}

GroundStateResult ground_state_reference(const PauliSum& h, std::size_t chi_max,
                                         std::size_t dense_limit,
                                         std::vector<std::string>* warnings) {
  const Matrix dense = to_dense(h, dense_limit);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(dense);
  GroundStateResult out;
  out.energy = eig.eigenvalues()(0);
  out.gap = dense.rows() > 1 ? eig.eigenvalues()(1) - eig.eigenvalues()(0) : 0.0;
  out.degenerate = dense.rows() > 1 && out.gap < 1e-10;
  if (out.degenerate && warnings != nullptr) {
    warnings->push_back("DegenerateGroundState: lowest eigenvalues differ by " +
                        std::to_string(out.gap));
  }
  Vector v = eig.eigenvectors().col(0);
  Eigen::Index pivot = 0;
  v.cwiseAbs().maxCoeff(&pivot);
  v *= std::conj(v(pivot)) / std::abs(v(pivot));
  v.normalize();
  out.dense_state = v;

  DenseToMpsResult conv = dense_to_mps(v, chi_max);
  out.overlap = conv.overlap;
  out.mps = canonicalize_mps(conv.mps, Direction::right);
  out.mps.normalized = true;
  out.mps_energy = mps_expectation(h, out.mps).real();
  return out;
}

double mps_norm_squared(const Mps& m) {
  m.validate();
  Matrix env = Matrix::Identity(1, 1);
  for (const auto& a : m.tensors) {
    const Matrix a0 = a.slice(0);
    const Matrix a1 = a.slice(1);
    env = a0.adjoint() * env * a0 + a1.adjoint() * env * a1;
  }
  return env(0, 0).real();
}

cplx mps_expectation(const PauliSum& op, const Mps& m) {
  m.validate();
  if (op.n_sites() != m.n_sites()) {
    throw Error(ErrorCode::DimensionMismatch, "operator and state sizes differ");
  }
  const std::size_t n = m.n_sites();
  std::vector<std::array<Matrix, 2>> slices(n);
  for (std::size_t j = 0; j < n; ++j) slices[j] = {m.tensors[j].slice(0), m.tensors[j].slice(1)};

  cplx total{};
  for (const auto& term : op.terms()) {
    Matrix env = Matrix::Identity(1, 1);
    for (std::size_t j = 0; j < n; ++j) {
      const Eigen::Matrix2cd sigma = pauli_matrix(term.string[j]);
      Matrix next = Matrix::Zero(static_cast<Eigen::Index>(m.tensors[j].right()),
                                 static_cast<Eigen::Index>(m.tensors[j].right()));
      for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
          if (sigma(s, t) != cplx{}) {
            next += sigma(s, t) * (slices[j][s].adjoint() * env * slices[j][t]);
          }
        }
      }
      env = std::move(next);
    }
    total += term.coeff * env(0, 0);
  }
  return total / mps_norm_squared(m);
}

}  // namespace cdmpo
