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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdmpo/pauli.hpp"

namespace cdmpo {

enum class Ladder { annihilate, create };

enum class FermionTermKind { one_body, two_body };

/// h_pq a_p^dag a_q (one_body, indices {p,q}) or
/// 1/2 g_pqrs a_p^dag a_q^dag a_r a_s (two_body, indices {p,q,r,s}).
struct FermionTerm {
  FermionTermKind kind = FermionTermKind::one_body;
  std::vector<std::size_t> indices;
  double coeff = 0.0;
};

struct FermionHamiltonian {
  std::size_t n_sites = 0;
  std::vector<FermionTerm> terms;
};

/// Jordan-Wigner image of a_p (annihilate) or a_p^dag (create) on n qubits:
/// Z_0 ... Z_{p-1} (X + iY)/2 on site p for a_p, (X - iY)/2 for a_p^dag.
/// Qubit state |1> is the occupied orbital, so a_p maps |1> to |0>.
PauliSum jordan_wigner_op(Ladder mode, std::size_t p, std::size_t n);

/// Maps a list of fermionic terms to a merged PauliSum. When the result has a
/// coefficient with imaginary part above 1e-13 (input not Hermitian-closed) a
/// NonHermitianInput message is appended to `warnings`; this is not fatal.
PauliSum map_hamiltonian(std::span<const FermionTerm> terms, std::size_t n,
                         std::vector<std::string>* warnings = nullptr);

/// Reads {"n": N, "terms": [{"kind": "one_body"|"two_body",
/// "indices": [...], "coeff": x}, ...]}. Throws Error(MalformedFile) or
/// Error(IndexOutOfRange).
FermionHamiltonian parse_fermion_json(std::string_view text);

}  // namespace cdmpo
