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

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdmpo/bridge.hpp"
#include "cdmpo/linalg.hpp"
#include "cdmpo/pauli.hpp"

namespace cdmpo {

enum class Gauge { none, left_canonical, right_canonical, center };

std::string_view to_string(Gauge g);
Gauge gauge_from_string(std::string_view s);

/// W^{s s'}_{a b}: bonds (left a, right b) and physical (out s, in s').
/// Stored row-major in (a, b, s, s').
class MpoTensor {
 public:
  MpoTensor() = default;
  MpoTensor(std::size_t left, std::size_t right)
      : left_(left), right_(right), data_(left * right * 4, cplx{}) {}

  std::size_t left() const noexcept { return left_; }
  std::size_t right() const noexcept { return right_; }

  cplx& operator()(std::size_t a, std::size_t b, std::size_t s, std::size_t t) {
    return data_[((a * right_ + b) * 2 + s) * 2 + t];
  }
  cplx operator()(std::size_t a, std::size_t b, std::size_t s, std::size_t t) const {
    return data_[((a * right_ + b) * 2 + s) * 2 + t];
  }

  /// 2x2 operator block W_{ab}.
  Eigen::Matrix2cd block(std::size_t a, std::size_t b) const;
  void add_block(std::size_t a, std::size_t b, const Eigen::Matrix2cd& op);

  /// Rows (a, s, s'), columns b.
  Matrix left_matrix() const;
  static MpoTensor from_left_matrix(const Matrix& m, std::size_t left);
  /// Rows a, columns (b, s, s').
  Matrix right_matrix() const;
  static MpoTensor from_right_matrix(const Matrix& m, std::size_t right);

  const std::vector<cplx>& data() const noexcept { return data_; }
  std::vector<cplx>& data() noexcept { return data_; }

 private:
  std::size_t left_ = 0;
  std::size_t right_ = 0;
  std::vector<cplx> data_;
};

struct Mpo {
  std::vector<MpoTensor> tensors;
  std::vector<Gauge> gauge;

  std::size_t n_sites() const noexcept { return tensors.size(); }
  /// chi_0 ... chi_N with chi_0 = chi_N = 1 for a valid chain.
  std::vector<std::size_t> bond_dims() const;
  /// Throws DimensionError when adjacent bonds disagree or the ends are not 1.
  void validate() const;
};

/// Sum over (a, s, s') of conj(W_{a b}) W_{a b~} minus identity, max-abs.
double left_canonical_error(const MpoTensor& w);
/// Sum over (b, s, s') of W_{a b} conj(W_{a~ b}) minus identity, max-abs.
double right_canonical_error(const MpoTensor& w);

/// Cut coefficient matrix of one sweep step. Rows are (incoming bond, local
/// symbol) pairs, columns the distinct remaining suffixes on sites i+1..N-1.
struct CutMatrix {
  std::size_t step = 0;
  std::vector<std::pair<std::size_t, Pauli>> row_labels;
  std::vector<PauliString> col_labels;
  Matrix values;
};

struct MpoBuildTrace {
  std::vector<CutMatrix> cuts;
  std::vector<std::size_t> ranks;
};

/// Left-to-right sweep: at each site form the cut matrix, factor it with a
/// column-pivoted QR, keep r = #{m : |R_mm| > rank_tol |R_00|} columns of Q as
/// the local tensor and carry R P^T forward as the next suffix table.
/// Throws EmptyOperator, or RankCollapse when a cut matrix is identically zero.
Mpo build_mpo_qr(const PauliSum& op, double rank_tol = 1e-12,
                 MpoBuildTrace* trace = nullptr);

Matrix mpo_to_dense(const Mpo& m, std::size_t dense_limit = kDefaultDenseLimit);

/// Mixed-canonical form: sites < center left-canonical, sites > center
/// right-canonical, the center tensor carries the norm.
Mpo canonicalize(const Mpo& m, std::size_t center);

struct CompressionResult {
  Mpo mpo;
  /// sqrt(sum of discarded sigma^2) at bond j (between sites j and j+1).
  std::vector<double> discarded_weight;
  /// sqrt(sum over bonds of discarded_weight^2): the Frobenius error of the
  /// dense contraction for a single sweep.
  double total_discarded() const;
};

/// Right-canonicalizes, then sweeps left to right truncating each bond SVD:
/// keeps sigma_m > svd_tol * sigma_0, at most max_bond values.
CompressionResult compress(const Mpo& m, double svd_tol,
                           std::size_t max_bond = std::numeric_limits<std::size_t>::max());

struct BridgeSvd {
  Matrix left_factor;   ///< U_r Sigma_r^{1/2}, |I_L| x r
  RealVector sigma;     ///< every singular value, non-increasing
  Matrix right_factor;  ///< Sigma_r^{1/2} V_r^dagger, r x |I_R|
  Bridge truncated;     ///< nonzero entries of the rank-r product
  std::size_t rank = 0;
  bool clamped = false;  ///< requested rank exceeded min(|I_L|, |I_R|)
  double truncation_error = 0.0;  ///< sqrt(sum_{m >= r} sigma_m^2)
};

/// Frobenius-optimal rank-r approximation of the bridge. Throws
/// IndexOutOfRange for rank 0.
BridgeSvd bridge_svd(const BridgeDecomposition& d, std::size_t rank);

/// Tensor file format shared by MPO and MPS:
///   {"format": "cdmpo-mpo"|"cdmpo-mps", "version": 1, "n_sites",
///    "bond_dims": [chi_0..chi_N], "gauge": [tag per site],
///    "physical_dims": [2,2]|[2], "payload": base64}
/// The payload concatenates the site tensors in order, each row-major in its
/// index order, every complex entry as two little-endian IEEE-754 float64
/// values (real, imaginary).
std::string mpo_to_json(const Mpo& m);
Mpo mpo_from_json(std::string_view text);

}  // namespace cdmpo
