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

#include <algorithm>
#include <random>
#include <set>

#include "cdmpo/bridge.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"

namespace cdmpo {
namespace {

std::vector<std::string> strs(const std::vector<PauliString>& v) {
  std::vector<std::string> out;
  for (const auto& p : v) out.push_back(p.str());
  return out;
}

TEST(Bridge, H2SubsetAtMiddleCut) {
  const auto d = compile(testing::h2_subset(), 2);
  EXPECT_EQ(strs(d.left.fragments),
            (std::vector<std::string>{"II", "IZ", "XX", "YX", "ZI", "ZZ"}));
  EXPECT_EQ(strs(d.right.fragments), (std::vector<std::string>{"II", "XY", "YY", "ZI", "ZZ"}));
  EXPECT_EQ(d.bridge.active_count(), 9u);
  const auto a = *d.left.find(PauliString::parse("YX"));
  const auto b = *d.right.find(PauliString::parse("XY"));
  EXPECT_EQ(d.bridge.entries.at({a, b}), cplx(0.045322, 0.0));
}

TEST(Bridge, DefaultCutIsHalf) {
  EXPECT_EQ(compile(testing::h2_subset()).cut, 2u);
  std::mt19937_64 rng(2);
  EXPECT_EQ(compile(testing::random_sum(rng, 7, 4)).cut, 3u);
}

TEST(Bridge, FirstSiteCutMatchesTable) {
  // Rows are the site-0 symbols present in the table, columns the sorted suffixes.
  const auto d = compile(testing::h2_subset(), 1);
  EXPECT_EQ(strs(d.left.fragments), (std::vector<std::string>{"I", "X", "Y", "Z"}));
  EXPECT_EQ(strs(d.right.fragments),
            (std::vector<std::string>{"III", "IZI", "IZZ", "XXY", "XYY", "ZII", "ZZI"}));
  testing::M expected = testing::M::Zero(4, 7);
  expected(0, 0) = -0.098864;
  expected(0, 1) = -0.222786;
  expected(0, 2) = 0.174348;
  expected(0, 6) = 0.165867;
  expected(1, 4) = -0.045322;
  expected(2, 3) = 0.045322;
  expected(3, 0) = 0.171198;
  expected(3, 1) = 0.120545;
  expected(3, 5) = 0.168622;
  EXPECT_EQ(d.bridge.dense(), expected);
}

TEST(Bridge, SingleTerm) {
  const PauliSum op(3, {{cplx(0.0, -2.5), PauliString::parse("XYZ")}});
  for (std::size_t cut = 1; cut < 3; ++cut) {
    const auto d = compile(op, cut);
    EXPECT_EQ(d.left.size(), 1u);
    EXPECT_EQ(d.right.size(), 1u);
    EXPECT_EQ(d.bridge.dense()(0, 0), cplx(0.0, -2.5));
    EXPECT_EQ(reconstruct(d), op);
  }
}

TEST(Bridge, ReconstructionIdentityOnRandomSums) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto op = testing::random_sum(rng, n, 1 + trial % 25, trial % 3 == 0);
    const std::size_t cut = 1 + rng() % (n - 1);
    const auto d = compile(op, cut);
    EXPECT_EQ(reconstruct(d).sorted(), op.sorted());
    EXPECT_LE(d.left.size(), std::min<std::size_t>(op.size(), std::size_t{1} << (2 * cut)));
    EXPECT_LE(d.right.size(), op.size());
    EXPECT_EQ(compile(reconstruct(d), cut).bridge.entries, d.bridge.entries);
  }
}

TEST(Bridge, GraphLayersAreUniquePrefixesAndSuffixes) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + trial % 5;
    const auto op = testing::random_sum(rng, n, 12);
    const std::size_t cut = 1 + rng() % (n - 1);
    const auto d = compile(op, cut);
    ASSERT_EQ(d.graph_l.layers.size(), cut + 1);
    for (std::size_t i = 0; i <= cut; ++i) {
      std::set<std::string> expected;
      for (const auto& t : op.terms()) expected.insert(t.string.str().substr(0, i));
      EXPECT_EQ(strs(d.graph_l.layers[i]),
                std::vector<std::string>(expected.begin(), expected.end()));
    }
    ASSERT_EQ(d.graph_r.layers.size(), n - cut + 1);
    for (std::size_t i = 0; i <= n - cut; ++i) {
      std::set<std::string> expected;
      for (const auto& t : op.terms()) expected.insert(t.string.str().substr(cut + i));
      EXPECT_EQ(strs(d.graph_r.layers[i]),
                std::vector<std::string>(expected.begin(), expected.end()));
    }
    // Each fragment has exactly one labelled path: one incoming edge per non-root vertex.
    std::size_t non_root = 0;
    for (std::size_t i = 1; i <= cut; ++i) non_root += d.graph_l.layers[i].size();
    EXPECT_EQ(d.graph_l.edges.size(), non_root);
    for (const auto& e : d.graph_l.edges) {
      const auto& parent = d.graph_l.layers[e.layer][e.from];
      const auto& child = d.graph_l.layers[e.layer + 1][e.to];
      EXPECT_EQ(child.slice(0, parent.size()), parent);
      EXPECT_EQ(child[parent.size()], e.label);
    }
  }
}

TEST(Bridge, CancelledEntriesStayActive) {
  const PauliSum op(2, {{1.0, PauliString::parse("XZ")}, {2.0, PauliString::parse("ZZ")}});
  const auto d = compile(op, 1);
  auto coeffs = d.bridge.entries;
  coeffs.begin()->second = 0.0;
  const auto updated = set_bridge(d, coeffs);
  EXPECT_EQ(updated.bridge.active_count(), 2u);
  EXPECT_EQ(updated.bridge.cancelled_count(), 1u);
  EXPECT_EQ(prune_zero_entries(updated).bridge.active_count(), 1u);
}

TEST(Bridge, SetBridgeKeepsStructure) {
  const auto d = compile(testing::h2_subset(), 2);
  const std::string hash = d.structural_hash();

  std::map<BridgeKey, cplx> zeros;
  for (const auto& [k, v] : d.bridge.entries) zeros[k] = 0.0;
  const auto zeroed = set_bridge(d, zeros);
  EXPECT_TRUE(reconstruct(prune_zero_entries(zeroed)).empty());
  EXPECT_EQ(zeroed.structural_hash(), hash);

  auto doubled = d.bridge.entries;
  for (auto& [k, v] : doubled) v *= 2.0;
  EXPECT_EQ(reconstruct(set_bridge(d, doubled)).sorted(), (2.0 * testing::h2_subset()).sorted());

  auto activated = d.bridge.entries;
  ASSERT_FALSE(activated.contains({0, 1}));
  activated[{0, 1}] = 0.5;
  const auto grown = reconstruct(set_bridge(d, activated));
  EXPECT_EQ(grown.size(), 10u);
  EXPECT_EQ(grown.coefficient(PauliString::parse("IIXY")), cplx(0.5, 0.0));
  EXPECT_EQ(set_bridge(d, activated).structural_hash(), hash);

  EXPECT_CDMPO_ERROR(set_bridge(d, {{{6, 0}, 1.0}}), ErrorCode::IndexOutOfRange);
}

TEST(Bridge, RejectsBadInput) {
  EXPECT_CDMPO_ERROR(compile(testing::h2_subset(), 0), ErrorCode::CutOutOfRange);
  EXPECT_CDMPO_ERROR(compile(testing::h2_subset(), 4), ErrorCode::CutOutOfRange);
  EXPECT_CDMPO_ERROR(compile(PauliSum(4), 2), ErrorCode::EmptyOperator);
}

TEST(Bridge, JsonIsDeterministicAndRoundTrips) {
  const auto d = compile(testing::h2_subset(), 2);
  const std::string text = bridge_to_json(d);
  EXPECT_EQ(text, bridge_to_json(compile(testing::h2_subset(), 2)));
  const auto back = bridge_from_json(text);
  EXPECT_EQ(back.bridge.entries, d.bridge.entries);
  EXPECT_EQ(back.structural_hash(), d.structural_hash());
  EXPECT_EQ(back.graph_l, d.graph_l);
  EXPECT_EQ(back.graph_r, d.graph_r);
  EXPECT_EQ(bridge_to_json(back), text);
  EXPECT_CDMPO_ERROR(bridge_from_json("{\"format\": \"other\"}"), ErrorCode::MalformedFile);
  EXPECT_CDMPO_ERROR(bridge_from_json("not json"), ErrorCode::MalformedFile);
}

TEST(Bridge, HilbertSchmidtMetadata) {
  const auto d = compile(testing::h2_subset(), 1);
  EXPECT_DOUBLE_EQ(d.hs_norm_left(), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(d.hs_norm_right(), std::sqrt(8.0));
}

}  // namespace
}  // namespace cdmpo
