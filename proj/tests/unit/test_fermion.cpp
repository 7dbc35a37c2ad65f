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

#include <gtest/gtest.h>

#include "cdmpo/fermion.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"

namespace cdmpo {
namespace {

using testing::M;

// Fock-space annihilator built from occupation numbers: a_p|n> = (-1)^{sum_{m<p} n_m}
// |n - e_p>, site 0 the most significant bit.
M fock_annihilator(std::size_t p, std::size_t n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  M a = M::Zero(dim, dim);
  for (Eigen::Index state = 0; state < dim; ++state) {
    auto occupied = [&](std::size_t site) { return (state >> (n - 1 - site)) & 1; };
    if (!occupied(p)) continue;
    int parity = 0;
    for (std::size_t m = 0; m < p; ++m) parity += static_cast<int>(occupied(m));
    const Eigen::Index target = state & ~(Eigen::Index{1} << (n - 1 - p));
    a(target, state) = parity % 2 == 0 ? 1.0 : -1.0;
  }
  return a;
}

TEST(JordanWigner, MatchesFockSpaceOperators) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t p = 0; p < n; ++p) {
      const M a = to_dense(jordan_wigner_op(Ladder::annihilate, p, n));
      const M ad = to_dense(jordan_wigner_op(Ladder::create, p, n));
      EXPECT_LT((a - fock_annihilator(p, n)).norm(), 1e-15);
      EXPECT_LT((ad - fock_annihilator(p, n).adjoint()).norm(), 1e-15);
    }
  }
}

TEST(JordanWigner, CanonicalAnticommutators) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto dim = Eigen::Index{1} << n;
    for (std::size_t p = 0; p < n; ++p) {
      const M ap = to_dense(jordan_wigner_op(Ladder::annihilate, p, n));
      for (std::size_t q = 0; q < n; ++q) {
        const M aq = to_dense(jordan_wigner_op(Ladder::annihilate, q, n));
        const M aqd = to_dense(jordan_wigner_op(Ladder::create, q, n));
        const M expected = p == q ? M(M::Identity(dim, dim)) : M(M::Zero(dim, dim));
        EXPECT_LT((ap * aqd + aqd * ap - expected).cwiseAbs().maxCoeff(), 1e-13);
        EXPECT_LT((ap * aq + aq * ap).cwiseAbs().maxCoeff(), 1e-13);
      }
    }
  }
}

TEST(JordanWigner, NumberOperatorIsExact) {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::size_t p = 0; p < n; ++p) {
      const FermionTerm t{FermionTermKind::one_body, {p, p}, 1.0};
      const PauliSum op = map_hamiltonian(std::span(&t, 1), n);
      PauliString z(n);
      z.set(p, Pauli::Z);
      EXPECT_EQ(op, PauliSum(n, {{0.5, PauliString(n)}, {-0.5, z}}));
    }
  }
}

TEST(JordanWigner, HamiltonianMatchesFockOracle) {
  const auto h = parse_fermion_json(testing::read_file(testing::fixture_path("hopping.json")));
  ASSERT_EQ(h.n_sites, 3u);
  std::vector<std::string> warnings;
  const PauliSum op = map_hamiltonian(h.terms, h.n_sites, &warnings);
  EXPECT_TRUE(warnings.empty());
  M expected = M::Zero(8, 8);
  for (const auto& t : h.terms) {
    M term = M::Identity(8, 8);
    const std::size_t half = t.indices.size() / 2;
    for (std::size_t k = 0; k < t.indices.size(); ++k) {
      const M a = fock_annihilator(t.indices[k], 3);
      term = term * (k < half ? M(a.adjoint()) : a);
    }
    expected += (t.kind == FermionTermKind::two_body ? 0.5 : 1.0) * t.coeff * term;
  }
  EXPECT_LT((to_dense(op) - expected).norm(), 1e-13);
}

TEST(JordanWigner, WarnsOnNonHermitianInput) {
  const FermionTerm t{FermionTermKind::one_body, {0, 1}, 1.0};
  std::vector<std::string> warnings;
  map_hamiltonian(std::span(&t, 1), 2, &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("NonHermitianInput"), std::string::npos);
}

TEST(JordanWigner, RejectsBadInput) {
  EXPECT_CDMPO_ERROR(jordan_wigner_op(Ladder::create, 3, 3), ErrorCode::IndexOutOfRange);
  EXPECT_CDMPO_ERROR(parse_fermion_json("{\"n\": 2, \"terms\": [{\"kind\": \"three\"}]}"),
                     ErrorCode::MalformedFile);
  EXPECT_CDMPO_ERROR(
      parse_fermion_json(
          "{\"n\": 2, \"terms\": [{\"kind\": \"one_body\", \"indices\": [0, 2], \"coeff\": 1}]}"),
      ErrorCode::IndexOutOfRange);
  const auto number = parse_fermion_json(testing::read_file(testing::fixture_path("number_op.json")));
  EXPECT_EQ(map_hamiltonian(number.terms, number.n_sites),
            PauliSum(1, {{0.5, PauliString(1)}, {-0.5, PauliString::parse("Z")}}));
}

}  // namespace
}  // namespace cdmpo
