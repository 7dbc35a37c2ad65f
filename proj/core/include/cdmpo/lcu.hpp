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

#include "cdmpo/bridge.hpp"
#include "cdmpo/linalg.hpp"
#include "cdmpo/pauli.hpp"

namespace cdmpo {

struct PrepEntry {
  std::size_t a = 0;
  std::size_t b = 0;
  double amplitude = 0.0;  ///< sqrt(|s_ab| / lambda)

  friend bool operator==(const PrepEntry&, const PrepEntry&) = default;
};

struct SelectRow {
  std::size_t a = 0;
  std::size_t b = 0;
  PauliString left;
  PauliString right;
  cplx phase{1.0, 0.0};  ///< s_ab / |s_ab|

  friend bool operator==(const SelectRow&, const SelectRow&) = default;
};

/// Prep/Select program for G = sum s_ab P_a^L (x) P_b^R.
///
/// The index register is the pair (alpha, beta), alpha on a_left qubits and
/// beta on a_right qubits, each padded to a power of two. The flattened index
/// is alpha * 2^a_right + beta, most significant qubit first, and the index
/// register is more significant than the system in dense matrices.
struct LcuProgram {
  std::size_t n_sites = 0;
  std::size_t cut = 0;
  double lambda = 0.0;
  std::size_t n_left = 0;
  std::size_t n_right = 0;
  std::size_t a_left = 0;
  std::size_t a_right = 0;
  std::vector<PauliString> left_fragments;
  std::vector<PauliString> right_fragments;
  std::vector<PrepEntry> prep;     ///< sorted by (a, b)
  std::vector<SelectRow> select;   ///< same pairs and order as prep
  std::string select_hash;

  std::size_t ancillas() const noexcept { return a_left + a_right; }
  std::size_t index_of(std::size_t a, std::size_t b) const noexcept {
    return (a << a_right) + b;
  }

  friend bool operator==(const LcuProgram&, const LcuProgram&) = default;
};

/// ceil(log2(n)) for n >= 1.
std::size_t index_qubits(std::size_t n);

/// SHA-256 over the dictionaries and the sorted active pairs. Phases and
/// amplitudes do not enter.
std::string compute_select_hash(const LcuProgram& prog);

/// Active pairs are the nonzero bridge entries. Throws ZeroOperator.
LcuProgram compile_lcu(const BridgeDecomposition& d);

/// New lambda, amplitudes and phases from `d`; the select table and its hash
/// stay as compiled. A pair that becomes zero keeps amplitude 0 and its old
/// phase. Throws SupportChanged when the dictionaries differ or a nonzero
/// entry lies outside the compiled pairs, ZeroOperator when all vanish.
LcuProgram update_coefficients(const LcuProgram& prog, const BridgeDecomposition& d);

/// lambda * sum amp^2 phase P_a^L (x) P_b^R.
PauliSum lcu_operator(const LcuProgram& prog);

/// Amplitude vector over the 2^a index states.
RealVector prep_vector(const LcuProgram& prog);

/// Householder completion: first column equals the (real) amplitude vector.
Matrix prep_unitary(const RealVector& amplitudes);

struct SelectFactors {
  Matrix select_left;   ///< controlled on alpha only
  Matrix select_right;  ///< controlled on beta only
};

/// Dense Select over index (x) system. Index states outside the dictionaries
/// act as identity on their half. With `with_phases` the row phases are
/// applied as a diagonal on the index register, else Select = Select_L Select_R.
Matrix select_dense(const LcuProgram& prog, bool with_phases = true,
                    std::size_t dense_limit = 12);
SelectFactors select_factorized_dense(const LcuProgram& prog, std::size_t dense_limit = 12);

struct BlockEncoding {
  Matrix block;   ///< (<0|^a (x) I) W (|0>^a (x) I)
  Matrix column;  ///< W (|0>^a (x) I), 2^a blocks of 2^N rows stacked
  double prep_norm_error = 0.0;  ///< |sum amp^2 - 1|

  /// ||block phi0||^2 for a normalized reference.
  double success_probability(const Vector& phi0) const;
};

/// Builds W = (Prep^dagger (x) I) Select (Prep (x) I) column-wise. Throws
/// TooLarge when N + a exceeds `dense_limit`.
BlockEncoding block_encoding_dense(const LcuProgram& prog, std::size_t dense_limit = 14);

/// Versioned text listing:
///   # cdmpo-gates v1
///   # n_sites=N cut=M lambda=L n_left=.. n_right=.. a_left=.. a_right=..
///   # left_fragments=F,F,...
///   # right_fragments=F,F,...
///   # select_hash=HEX
///   prep a,b:amp a,b:amp ...
///   select ctrl=BITS target=STRING pair=a,b [phase=re,im]   (one per pair)
///   prep_dg
/// The phase annotation is omitted when the phase is exactly 1.
std::string emit_gates(const LcuProgram& prog);
LcuProgram parse_gates(std::string_view text);

/// {"format": "cdmpo-lcu", "version": 1, "n_sites", "cut", "lambda",
///  "n_left", "n_right", "a_left", "a_right", "left_fragments",
///  "right_fragments", "prep": [{"a", "b", "amp"}],
///  "select": [{"a", "b", "pl", "pr", "phase_re", "phase_im"}], "select_hash"}
std::string lcu_to_json(const LcuProgram& prog);
LcuProgram lcu_from_json(std::string_view text);

}  // namespace cdmpo
