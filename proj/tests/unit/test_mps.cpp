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

#include <random>

#include "cdmpo/mps.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"

namespace cdmpo {
namespace {

using testing::V;

V basis(std::size_t n, Eigen::Index index) {
  V v = V::Zero(Eigen::Index{1} << n);
  v(index) = 1.0;
  return v;
}

V bell() {
  V v = V::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

double fidelity(const V& a, const V& b) { return std::abs(a.dot(b)); }

TEST(DenseToMps, ProductStateHasUnitBonds) {
  for (std::size_t chi : {1u, 2u, 16u}) {
    const auto r = dense_to_mps(basis(5, 0), chi);
    EXPECT_EQ(r.mps.bond_dims(), std::vector<std::size_t>(6, 1));
    EXPECT_NEAR(r.overlap, 1.0, 1e-14);
  }
}

TEST(DenseToMps, BellStateTruncation) {
  const auto exact = dense_to_mps(bell(), 2);
  EXPECT_NEAR(exact.overlap, 1.0, 1e-14);
  EXPECT_LT((mps_to_dense(exact.mps) - bell()).norm(), 1e-14);
  const auto cut = dense_to_mps(bell(), 1);
  EXPECT_NEAR(cut.overlap, 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(mps_to_dense(cut.mps).norm(), 1.0, 1e-14);
}

TEST(DenseToMps, FullRankIsLossless) {
  std::mt19937_64 rng(61);
  for (std::size_t n = 1; n <= 8; ++n) {
    const V psi = testing::random_state(rng, n);
    const auto r = dense_to_mps(psi, std::size_t{1} << (n / 2));
    EXPECT_NEAR(r.overlap, 1.0, 1e-12);
    EXPECT_NEAR(fidelity(mps_to_dense(r.mps), psi), 1.0, 1e-12);
    for (const auto& a : r.mps.tensors) EXPECT_LT(left_gauge_error(a), 1e-12);
  }
}

TEST(DenseToMps, OverlapGrowsWithBond) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 5; ++trial) {
    const V psi = testing::random_state(rng, 7);
    double last = 0.0;
    for (std::size_t chi = 1; chi <= 8; ++chi) {
      const double ov = dense_to_mps(psi, chi).overlap;
      EXPECT_GE(ov, last - 1e-12);
      last = ov;
    }
    EXPECT_NEAR(last, 1.0, 1e-12);
  }
}

TEST(DenseToMps, RejectsBadInput) {
  EXPECT_CDMPO_ERROR(dense_to_mps(V::Ones(4), 2), ErrorCode::NotNormalized);
  EXPECT_CDMPO_ERROR(dense_to_mps(V::Ones(3).normalized(), 2), ErrorCode::DimensionError);
}

TEST(CanonicalizeMps, GaugeConditionsAndFidelity) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const V psi = testing::random_state(rng, 6);
    const Mps m = dense_to_mps(psi, 8).mps;
    const Mps right = canonicalize_mps(m, Direction::right);
    const Mps left = canonicalize_mps(right, Direction::left);
    for (std::size_t j = 0; j < 6; ++j) {
      EXPECT_LT(right_gauge_error(right.tensors[j]), 1e-12);
      EXPECT_LT(left_gauge_error(left.tensors[j]), 1e-12);
      EXPECT_EQ(right.gauge[j], Gauge::right_canonical);
    }
    EXPECT_NEAR(fidelity(mps_to_dense(right), psi), 1.0, 1e-11);
    EXPECT_NEAR(fidelity(mps_to_dense(left), psi), 1.0, 1e-11);
  }
  const Mps bell_right = canonicalize_mps(dense_to_mps(bell(), 2).mps, Direction::right);
  EXPECT_LT(max_right_gauge_error(bell_right), 1e-12);
  const Mps product = canonicalize_mps(dense_to_mps(basis(3, 5), 1).mps, Direction::right);
  EXPECT_NEAR(fidelity(mps_to_dense(product), basis(3, 5)), 1.0, 1e-15);
}

TEST(GroundState, SingleSiteCases) {
  const auto z = ground_state_reference(PauliSum(1, {{1.0, PauliString::parse("Z")}}), 1);
  EXPECT_NEAR(z.energy, -1.0, 1e-14);
  EXPECT_NEAR(fidelity(mps_to_dense(z.mps), basis(1, 1)), 1.0, 1e-14);
  const auto x = ground_state_reference(PauliSum(1, {{-1.0, PauliString::parse("X")}}), 1);
  EXPECT_NEAR(x.energy, -1.0, 1e-14);
  EXPECT_NEAR(fidelity(mps_to_dense(x.mps), V::Ones(2).normalized()), 1.0, 1e-14);
}

TEST(GroundState, H2SubsetMatchesDenseSpectrum) {
  const PauliSum h = testing::h2_subset();
  const auto g = ground_state_reference(h, 4);
  EXPECT_NEAR(g.energy, testing::min_eigenvalue(testing::dense(h)), 1e-12);
  EXPECT_NEAR(g.energy, -0.8007888, 1e-7);
  EXPECT_FALSE(g.degenerate);
  EXPECT_NEAR(g.overlap, 1.0, 1e-12);
  EXPECT_NEAR(g.mps_energy, g.energy, 1e-12);
  EXPECT_LT(max_right_gauge_error(g.mps), 1e-12);
  for (Eigen::Index b = 0; b < 16; ++b) {
    const V phi = basis(4, b);
    EXPECT_LE(g.energy, phi.dot(testing::dense(h) * phi).real() + 1e-12);
  }
}

TEST(GroundState, FlagsDegeneracy) {
  std::vector<std::string> warnings;
  const auto g = ground_state_reference(PauliSum(2, {{1.0, PauliString::parse("ZI")}}), 2,
                                        kDefaultDenseLimit, &warnings);
  EXPECT_TRUE(g.degenerate);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("DegenerateGroundState"), std::string::npos);
  EXPECT_CDMPO_ERROR(ground_state_reference(PauliSum(13, {{1.0, PauliString(13)}}), 2),
                     ErrorCode::TooLarge);
}

TEST(MpsExpectation, MatchesDense) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const V psi = testing::random_state(rng, 5);
    const auto op = testing::random_sum(rng, 5, 10, true);
    const Mps m = dense_to_mps(psi, 4).mps;
    const V approx = mps_to_dense(m);
    EXPECT_LT(std::abs(mps_expectation(op, m) - approx.dot(testing::dense(op) * approx)), 1e-12);
    EXPECT_NEAR(mps_norm_squared(m), 1.0, 1e-12);
  }
}

TEST(MpsJson, RoundTripIsBitExact) {
  std::mt19937_64 rng(79);
  const Mps m = canonicalize_mps(dense_to_mps(testing::random_state(rng, 5), 3).mps,
                                 Direction::right);
  const Mps back = mps_from_json(mps_to_json(m));
  EXPECT_EQ(back.bond_dims(), m.bond_dims());
  EXPECT_EQ(back.gauge, m.gauge);
  EXPECT_EQ(back.normalized, m.normalized);
  for (std::size_t j = 0; j < m.n_sites(); ++j) EXPECT_EQ(back.tensors[j].data(), m.tensors[j].data());
  EXPECT_CDMPO_ERROR(mps_from_json("{\"format\": \"cdmpo-mps\", \"version\": 2}"),
                     ErrorCode::MalformedFile);
}

}  // namespace
}  // namespace cdmpo
