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

#include "cdmpo/fermion.hpp"

#include <cmath>
#include <json.hpp>

#include "cdmpo/errors.hpp"

namespace cdmpo {
namespace {

void check_index(std::size_t p, std::size_t n) {
  if (p >= n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "orbital index " + std::to_string(p) + " outside [0, " + std::to_string(n) + ")");
  }
}

}  // namespace

PauliSum jordan_wigner_op(Ladder mode, std::size_t p, std::size_t n) {
  check_index(p, n);
  PauliString x(n);
  for (std::size_t m = 0; m < p; ++m) x.set(m, Pauli::Z);
  PauliString y = x;
  x.set(p, Pauli::X);
  y.set(p, Pauli::Y);
  const double sign = mode == Ladder::annihilate ? 1.0 : -1.0;
  return PauliSum(n, {{cplx{0.5, 0.0}, x}, {cplx{0.0, 0.5 * sign}, y}});
}

PauliSum map_hamiltonian(std::span<const FermionTerm> terms, std::size_t n,
                         std::vector<std::string>* warnings) {
  PauliSum total(n);
  for (const auto& term : terms) {
    const std::size_t arity = term.kind == FermionTermKind::one_body ? 2 : 4;
    if (term.indices.size() != arity) {
      throw Error(ErrorCode::MalformedFile,
                  "term expects " + std::to_string(arity) + " indices");
    }
    for (std::size_t idx : term.indices) check_index(idx, n);

    // Creation operators occupy the first half of the index list.
    PauliSum product(n, {{cplx{1.0, 0.0}, PauliString(n)}});
    for (std::size_t k = 0; k < arity; ++k) {
      const Ladder mode = k < arity / 2 ? Ladder::create : Ladder::annihilate;
      product = product * jordan_wigner_op(mode, term.indices[k], n);
    }
    const double prefactor = term.kind == FermionTermKind::two_body ? 0.5 : 1.0;
    total = total + cplx{prefactor * term.coeff, 0.0} * product;
  }

  if (warnings != nullptr) {
    for (const auto& t : total.terms()) {
      if (std::abs(t.coeff.imag()) > 1e-13) {
        warnings->push_back("NonHermitianInput: term " + t.string.str() +
                            " has a complex coefficient; input is not Hermitian-closed");
        break;
      }
    }
  }
  return total;
}

FermionHamiltonian parse_fermion_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedFile, e.what());
  }
  FermionHamiltonian h;
  try {
    h.n_sites = doc.at("n").get<std::size_t>();
    for (const auto& item : doc.at("terms")) {
      FermionTerm term;
      const auto kind = item.at("kind").get<std::string>();
      if (kind == "one_body") {
        term.kind = FermionTermKind::one_body;
      } else if (kind == "two_body") {
        term.kind = FermionTermKind::two_body;
      } else {
        throw Error(ErrorCode::MalformedFile, "unknown term kind '" + kind + "'");
      }
      term.indices = item.at("indices").get<std::vector<std::size_t>>();
      term.coeff = item.at("coeff").get<double>();
      for (std::size_t idx : term.indices) check_index(idx, h.n_sites);
      h.terms.push_back(std::move(term));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, e.what());
  }
  if (h.n_sites == 0) throw Error(ErrorCode::MalformedFile, "n must be positive");
  return h;
}

}  // namespace cdmpo
