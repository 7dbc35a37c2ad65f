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

#include "cdmpo/mpo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "cdmpo/errors.hpp"

namespace cdmpo {
namespace {

Matrix kron(const Matrix& a, const Eigen::Matrix2cd& b) {
  Matrix out(a.rows() * 2, a.cols() * 2);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
    }
  }
  return out;
}

struct ThinQr {
  Matrix q;
  Matrix r;
};

ThinQr thin_qr(const Matrix& m) {
  const Eigen::Index k = std::min(m.rows(), m.cols());
  Eigen::HouseholderQR<Matrix> qr(m);
  ThinQr out;
  out.q = qr.householderQ() * Matrix::Identity(m.rows(), k);
  out.r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  return out;
}

// Absorbs `r` (k x chi_j) into the left bond of `w`.
MpoTensor absorb_left(const Matrix& r, const MpoTensor& w) {
  return MpoTensor::from_right_matrix(r * w.right_matrix(), w.right());
}

// Absorbs `l` (chi x k) into the right bond of `w`.
MpoTensor absorb_right(const MpoTensor& w, const Matrix& l) {
  return MpoTensor::from_left_matrix(w.left_matrix() * l, w.left());
}

}  // namespace

std::string_view to_string(Gauge g) {
  switch (g) {
    case Gauge::none: return "none";
    case Gauge::left_canonical: return "left_canonical";
    case Gauge::right_canonical: return "right_canonical";
    case Gauge::center: return "center";
  }
  return "none";
}

Gauge gauge_from_string(std::string_view s) {
  if (s == "none") return Gauge::none;
  if (s == "left_canonical") return Gauge::left_canonical;
  if (s == "right_canonical") return Gauge::right_canonical;
  if (s == "center") return Gauge::center;
  throw Error(ErrorCode::MalformedFile, "unknown gauge tag '" + std::string(s) + "'");
}

Eigen::Matrix2cd MpoTensor::block(std::size_t a, std::size_t b) const {
  Eigen::Matrix2cd m;
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t t = 0; t < 2; ++t) m(s, t) = (*this)(a, b, s, t);
  }
  return m;
}

void MpoTensor::add_block(std::size_t a, std::size_t b, const Eigen::Matrix2cd& op) {
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t t = 0; t < 2; ++t) (*this)(a, b, s, t) += op(s, t);
  }
}

Matrix MpoTensor::left_matrix() const {
  Matrix m(static_cast<Eigen::Index>(left_ * 4), static_cast<Eigen::Index>(right_));
  for (std::size_t a = 0; a < left_; ++a)
    for (std::size_t b = 0; b < right_; ++b)
      for (std::size_t st = 0; st < 4; ++st)
        m(static_cast<Eigen::Index>(a * 4 + st), static_cast<Eigen::Index>(b)) =
            data_[(a * right_ + b) * 4 + st];
  return m;
}

MpoTensor MpoTensor::from_left_matrix(const Matrix& m, std::size_t left) {
  MpoTensor w(left, static_cast<std::size_t>(m.cols()));
  for (std::size_t a = 0; a < left; ++a)
    for (std::size_t b = 0; b < w.right_; ++b)
      for (std::size_t st = 0; st < 4; ++st)
        w.data_[(a * w.right_ + b) * 4 + st] =
            m(static_cast<Eigen::Index>(a * 4 + st), static_cast<Eigen::Index>(b));
  return w;
}

Matrix MpoTensor::right_matrix() const {
  Matrix m(static_cast<Eigen::Index>(left_), static_cast<Eigen::Index>(right_ * 4));
  for (std::size_t a = 0; a < left_; ++a)
    for (std::size_t b = 0; b < right_; ++b)
      for (std::size_t st = 0; st < 4; ++st)
        m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b * 4 + st)) =
            data_[(a * right_ + b) * 4 + st];
  return m;
}

MpoTensor MpoTensor::from_right_matrix(const Matrix& m, std::size_t right) {
  MpoTensor w(static_cast<std::size_t>(m.rows()), right);
  for (std::size_t a = 0; a < w.left_; ++a)
    for (std::size_t b = 0; b < right; ++b)
      for (std::size_t st = 0; st < 4; ++st)
        w.data_[(a * right + b) * 4 + st] =
            m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b * 4 + st));
  return w;
}

std::vector<std::size_t> Mpo::bond_dims() const {
  std::vector<std::size_t> dims;
  if (tensors.empty()) return dims;
  dims.push_back(tensors.front().left());
  for (const auto& w : tensors) dims.push_back(w.right());
  return dims;
}

void Mpo::validate() const {
  if (tensors.empty()) throw Error(ErrorCode::DimensionError, "MPO has no sites");
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

double left_canonical_error(const MpoTensor& w) {
  const Matrix m = w.left_matrix();
  return (m.adjoint() * m - Matrix::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
}

double right_canonical_error(const MpoTensor& w) {
  const Matrix m = w.right_matrix();
  return (m * m.adjoint() - Matrix::Identity(m.rows(), m.rows())).cwiseAbs().maxCoeff();
}

Mpo build_mpo_qr(const PauliSum& op, double rank_tol, MpoBuildTrace* trace) {
  if (op.empty()) throw Error(ErrorCode::EmptyOperator, "operator has no terms");
  const std::size_t n = op.n_sites();

  // Suffix table per incoming bond index: suffix on sites i..N-1 -> coefficient.
  std::vector<std::map<PauliString, cplx>> residual(1);
  for (const auto& t : op.terms()) residual[0][t.string] += t.coeff;

  Mpo mpo;
  mpo.tensors.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::pair<std::size_t, Pauli>> row_set;
    std::set<PauliString> col_set;
    for (std::size_t a = 0; a < residual.size(); ++a) {
      for (const auto& [suffix, c] : residual[a]) {
        if (c == cplx{}) continue;
        row_set.insert({a, suffix[0]});
        col_set.insert(suffix.slice(1, suffix.size()));
      }
    }
    if (row_set.empty()) {
      throw Error(ErrorCode::RankCollapse,
                  "cut matrix at site " + std::to_string(i) + " is identically zero");
    }

    CutMatrix cut;
    cut.step = i;
    cut.row_labels.assign(row_set.begin(), row_set.end());
    cut.col_labels.assign(col_set.begin(), col_set.end());
    std::map<std::pair<std::size_t, Pauli>, Eigen::Index> row_index;
    std::map<PauliString, Eigen::Index> col_index;
    for (std::size_t j = 0; j < cut.row_labels.size(); ++j)
      row_index[cut.row_labels[j]] = static_cast<Eigen::Index>(j);
    for (std::size_t k = 0; k < cut.col_labels.size(); ++k)
      col_index[cut.col_labels[k]] = static_cast<Eigen::Index>(k);
    cut.values = Matrix::Zero(static_cast<Eigen::Index>(row_set.size()),
                              static_cast<Eigen::Index>(col_set.size()));
    for (std::size_t a = 0; a < residual.size(); ++a) {
      for (const auto& [suffix, c] : residual[a]) {
        if (c == cplx{}) continue;
        cut.values(row_index.at({a, suffix[0]}), col_index.at(suffix.slice(1, suffix.size()))) += c;
      }
    }

    const std::size_t chi_in = residual.size();
    if (i + 1 == n) {
      // Only the empty suffix remains: absorb the table directly.
      MpoTensor w(chi_in, 1);
      for (std::size_t j = 0; j < cut.row_labels.size(); ++j) {
        const auto [a, p] = cut.row_labels[j];
        w.add_block(a, 0, cut.values(static_cast<Eigen::Index>(j), 0) * pauli_matrix(p));
      }
      mpo.tensors.push_back(std::move(w));
      if (trace != nullptr) {
        trace->ranks.push_back(1);
        trace->cuts.push_back(std::move(cut));
      }
      break;
    }

    Eigen::ColPivHouseholderQR<Matrix> qr(cut.values);
    const Eigen::Index diag = std::min(cut.values.rows(), cut.values.cols());
    const double r00 = std::abs(qr.matrixQR()(0, 0));
    if (r00 == 0.0) {
      throw Error(ErrorCode::RankCollapse,
                  "cut matrix at site " + std::to_string(i) + " has no nonzero pivot");
    }
    Eigen::Index rank = 0;
    while (rank < diag && std::abs(qr.matrixQR()(rank, rank)) > rank_tol * r00) ++rank;

    const Matrix q = qr.householderQ() * Matrix::Identity(cut.values.rows(), rank);
    MpoTensor w(chi_in, static_cast<std::size_t>(rank));
    for (std::size_t j = 0; j < cut.row_labels.size(); ++j) {
      const auto [a, p] = cut.row_labels[j];
      const Eigen::Matrix2cd sigma = pauli_matrix(p);
      for (Eigen::Index l = 0; l < rank; ++l) {
        w.add_block(a, static_cast<std::size_t>(l), q(static_cast<Eigen::Index>(j), l) * sigma);
      }
    }
    mpo.tensors.push_back(std::move(w));

    const Matrix r_top = qr.matrixQR().topRows(rank).triangularView<Eigen::Upper>();
    const Matrix carried = r_top * qr.colsPermutation().transpose();
    std::vector<std::map<PauliString, cplx>> next(static_cast<std::size_t>(rank));
    for (Eigen::Index l = 0; l < rank; ++l) {
      for (std::size_t k = 0; k < cut.col_labels.size(); ++k) {
        const cplx v = carried(l, static_cast<Eigen::Index>(k));
        if (v != cplx{}) next[static_cast<std::size_t>(l)][cut.col_labels[k]] = v;
      }
    }
    residual = std::move(next);
    if (trace != nullptr) {
      trace->ranks.push_back(static_cast<std::size_t>(rank));
      trace->cuts.push_back(std::move(cut));
    }
  }
  mpo.gauge.assign(n, Gauge::none);
  return mpo;
}

Matrix mpo_to_dense(const Mpo& m, std::size_t dense_limit) {
  m.validate();
  if (m.n_sites() > dense_limit) {
    throw Error(ErrorCode::TooLarge, std::to_string(m.n_sites()) +
                                         " sites exceed the dense limit of " +
                                         std::to_string(dense_limit));
  }
  std::vector<Matrix> partial(1, Matrix::Identity(1, 1));
  for (const auto& w : m.tensors) {
    std::vector<Matrix> next(w.right());
    const Eigen::Index dim = partial.front().rows() * 2;
    for (std::size_t b = 0; b < w.right(); ++b) {
      next[b] = Matrix::Zero(dim, dim);
      for (std::size_t a = 0; a < w.left(); ++a) next[b] += kron(partial[a], w.block(a, b));
    }
    partial = std::move(next);
  }
  return partial.front();
}

Mpo canonicalize(const Mpo& m, std::size_t center) {
  m.validate();
  if (center >= m.n_sites()) {
    throw Error(ErrorCode::IndexOutOfRange, "center site outside the chain");
  }
  Mpo out = m;
  const std::size_t n = out.n_sites();
  for (std::size_t j = 0; j < center; ++j) {
    const ThinQr f = thin_qr(out.tensors[j].left_matrix());
    out.tensors[j] = MpoTensor::from_left_matrix(f.q, out.tensors[j].left());
    out.tensors[j + 1] = absorb_left(f.r, out.tensors[j + 1]);
    out.gauge[j] = Gauge::left_canonical;
  }
  for (std::size_t j = n - 1; j > center; --j) {
    const ThinQr f = thin_qr(out.tensors[j].right_matrix().adjoint());
    out.tensors[j] = MpoTensor::from_right_matrix(f.q.adjoint(), out.tensors[j].right());
    out.tensors[j - 1] = absorb_right(out.tensors[j - 1], f.r.adjoint());
    out.gauge[j] = Gauge::right_canonical;
  }
  out.gauge[center] = Gauge::center;
  return out;
}

double CompressionResult::total_discarded() const {
  double s = 0.0;
  for (double w : discarded_weight) s += w * w;
  return std::sqrt(s);
}

CompressionResult compress(const Mpo& m, double svd_tol, std::size_t max_bond) {
  CompressionResult out;
  out.mpo = canonicalize(m, 0);
  const std::size_t n = out.mpo.n_sites();
  out.discarded_weight.assign(n > 0 ? n - 1 : 0, 0.0);
  const std::size_t cap = std::max<std::size_t>(max_bond, 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const Matrix mat = out.mpo.tensors[j].left_matrix();
    Eigen::JacobiSVD<Matrix> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& s = svd.singularValues();
    Eigen::Index keep = 0;
    while (keep < s.size() && static_cast<std::size_t>(keep) < cap &&
           s(keep) > svd_tol * s(0)) {
      ++keep;
    }
    keep = std::max<Eigen::Index>(keep, 1);
    out.discarded_weight[j] = std::sqrt(s.tail(s.size() - keep).squaredNorm());
    const Matrix u = svd.matrixU().leftCols(keep);
    const Matrix sv = s.head(keep).asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
    out.mpo.tensors[j] = MpoTensor::from_left_matrix(u, out.mpo.tensors[j].left());
    out.mpo.tensors[j + 1] = absorb_left(sv, out.mpo.tensors[j + 1]);
    out.mpo.gauge[j] = Gauge::left_canonical;
  }
  if (n > 0) out.mpo.gauge[n - 1] = Gauge::center;
  return out;
}

BridgeSvd bridge_svd(const BridgeDecomposition& d, std::size_t rank) {
  if (rank == 0) throw Error(ErrorCode::IndexOutOfRange, "rank must be at least 1");
  const Matrix c = d.bridge.dense();
  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  BridgeSvd out;
  out.sigma = svd.singularValues();
  const auto max_rank = static_cast<std::size_t>(out.sigma.size());
  out.clamped = rank > max_rank;
  out.rank = std::min(rank, max_rank);
  const auto r = static_cast<Eigen::Index>(out.rank);
  const RealVector root = out.sigma.head(r).cwiseSqrt();
  out.left_factor = svd.matrixU().leftCols(r) * root.asDiagonal();
  out.right_factor = root.asDiagonal() * svd.matrixV().leftCols(r).adjoint();
  out.truncation_error = std::sqrt(out.sigma.tail(out.sigma.size() - r).squaredNorm());
  const Matrix cr = out.left_factor * out.right_factor;
  out.truncated.rows = d.bridge.rows;
  out.truncated.cols = d.bridge.cols;
  for (Eigen::Index a = 0; a < cr.rows(); ++a) {
    for (Eigen::Index b = 0; b < cr.cols(); ++b) {
      if (cr(a, b) != cplx{}) {
        out.truncated.entries[{static_cast<std::size_t>(a), static_cast<std::size_t>(b)}] = cr(a, b);
      }
    }
  }
  return out;
}

}  // namespace cdmpo
