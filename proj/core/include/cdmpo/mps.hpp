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
#include <string>
#include <string_view>
#include <vector>

#include "cdmpo/linalg.hpp"
#include "cdmpo/mpo.hpp"
#include "cdmpo/pauli.hpp"

namespace cdmpo {

/// A^{s}_{a b}: bonds (left a, right b), physical s. Stored row-major (a, b, s).
class MpsTensor {
 public:
  MpsTensor() = default;
  MpsTensor(std::size_t left, std::size_t right)
      : left_(left), right_(right), data_(left * right * 2, cplx{}) {}

  std::size_t left() const noexcept { return left_; }
  std::size_t right() const noexcept { return right_; }

  cplx& operator()(std::size_t a, std::size_t b, std::size_t s) {
    return data_[(a * right_ + b) * 2 + s];
  }
  cplx operator()(std::size_t a, std::size_t b, std::size_t s) const {
    return data_[(a * right_ + b) * 2 + s];
  }

  /// The left x right matrix A^s.
  Matrix slice(std::size_t s) const;

  /// Rows (a, s), columns b.
  Matrix left_matrix() const;
  static MpsTensor from_left_matrix(const Matrix& m, std::size_t left);
  /// Rows a, columns (b, s).
  Matrix right_matrix() const;
  static MpsTensor from_right_matrix(const Matrix& m, std::size_t right);

  const std::vector<cplx>& data() const noexcept { return data_; }
  std::vector<cplx>& data() noexcept { return data_; }

 private:
  std::size_t left_ = 0;
  std::size_t right_ = 0;
  std::vector<cplx> data_;
};

struct Mps {
  std::vector<MpsTensor> tensors;
  std::vector<Gauge> gauge;
  bool normalized = false;

  std::size_t n_sites() const noexcept { return tensors.size(); }
  std::vector<std::size_t> bond_dims() const;
  void validate() const;
};

/// sum_s A^{s dagger} A^s - I, max-abs.
double left_gauge_error(const MpsTensor& a);
/// sum_s A^s A^{s dagger} - I, max-abs.
double right_gauge_error(const MpsTensor& a);
/// Largest right_gauge_error over the chain.
double max_right_gauge_error(const Mps& m);

struct DenseToMpsResult {
  Mps mps;
  double overlap = 0.0;  ///< |<mps|state>| after renormalization
};

/// Successive SVD from the left, keeping at most chi_max singular values per
/// bond. Singular values below 1e-14 sigma_0 are dropped. Tensors come out
/// left-canonical. Throws NotNormalized or DimensionError.
DenseToMpsResult dense_to_mps(const Vector& state, std::size_t chi_max);

Vector mps_to_dense(const Mps& m, std::size_t dense_limit = kDefaultDenseLimit);

enum class Direction { left, right };

/// Left: QR sweep from site 0, every tensor left-canonical.
/// Right: LQ sweep from the last site, every tensor right-canonical.
/// The norm stays on the last (left sweep) or first (right sweep) site, so the
/// end tensor is canonical only for a normalized state.
Mps canonicalize_mps(const Mps& m, Direction direction);

struct GroundStateResult {
  Mps mps;           ///< right-canonical, normalized
  double energy = 0.0;      ///< lowest eigenvalue of the dense operator
  double mps_energy = 0.0;  ///< <mps|h|mps> after truncation
  double overlap = 0.0;
  double gap = 0.0;  ///< second-lowest minus lowest eigenvalue
  bool degenerate = false;
  Vector dense_state;
};

/// Dense diagonalization followed by dense_to_mps and right-canonicalization.
/// The eigenvector phase is fixed so its largest-magnitude entry is real
/// positive. A gap below 1e-10 sets `degenerate` and appends a warning.
/// Throws TooLarge.
GroundStateResult ground_state_reference(const PauliSum& h, std::size_t chi_max,
                                         std::size_t dense_limit = kDefaultDenseLimit,
                                         std::vector<std::string>* warnings = nullptr);

/// <psi|op|psi> / <psi|psi> by transfer-matrix contraction, term by term.
cplx mps_expectation(const PauliSum& op, const Mps& m);
double mps_norm_squared(const Mps& m);

std::string mps_to_json(const Mps& m);
Mps mps_from_json(std::string_view text);

}  // namespace cdmpo
