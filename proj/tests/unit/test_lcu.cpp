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

#include "cdmpo/lcu.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"

namespace cdmpo {
namespace {

using testing::M;
using testing::V;

PauliString ps(const std::string& s) { return PauliString::parse(s); }

bool is_unitary(const M& u, double tol) {
  return (u.adjoint() * u - M::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff() < tol;
}

// Select built entry by entry from the program tables.
M select_oracle(const LcuProgram& prog) {
  const Eigen::Index dim_a = Eigen::Index{1} << prog.ancillas();
  const Eigen::Index dim_s = Eigen::Index{1} << prog.n_sites;
  M out = M::Zero(dim_a * dim_s, dim_a * dim_s);
  const std::string id_l(prog.cut, 'I');
  const std::string id_r(prog.n_sites - prog.cut, 'I');
  for (std::size_t alpha = 0; alpha < (std::size_t{1} << prog.a_left); ++alpha) {
    for (std::size_t beta = 0; beta < (std::size_t{1} << prog.a_right); ++beta) {
      const std::string l = alpha < prog.n_left ? prog.left_fragments[alpha].str() : id_l;
      const std::string r = beta < prog.n_right ? prog.right_fragments[beta].str() : id_r;
      cplx phase = 1.0;
      for (const auto& row : prog.select) {
        if (row.a == alpha && row.b == beta) phase = row.phase;
      }
      const auto k = static_cast<Eigen::Index>(prog.index_of(alpha, beta));
      out.block(k * dim_s, k * dim_s, dim_s, dim_s) = phase * testing::kron_string(l + r);
    }
  }
  return out;
}

TEST(IndexQubits, CeilLog2) {
  EXPECT_EQ(index_qubits(1), 0u);
  EXPECT_EQ(index_qubits(2), 1u);
  EXPECT_EQ(index_qubits(3), 2u);
  EXPECT_EQ(index_qubits(4), 2u);
  EXPECT_EQ(index_qubits(5), 3u);
}

TEST(CompileLcu, SingleTerm) {
  const PauliSum h(2, {{cplx(0.0, -0.7), ps("XZ")}});
  const auto prog = compile_lcu(compile(h, 1));
  EXPECT_DOUBLE_EQ(prog.lambda, 0.7);
  ASSERT_EQ(prog.prep.size(), 1u);
  EXPECT_DOUBLE_EQ(prog.prep[0].amplitude, 1.0);
  EXPECT_NEAR(std::abs(prog.select[0].phase - cplx(0.0, -1.0)), 0.0, 1e-15);
  EXPECT_EQ(prog.ancillas(), 0u);
  const auto be = block_encoding_dense(prog);
  EXPECT_LT((prog.lambda * be.block - testing::dense(h)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(CompileLcu, AmplitudesFollowCoefficientMagnitudes) {
  const PauliSum h(2, {{3.0, ps("XI")}, {-1.0, ps("ZZ")}});
  const auto prog = compile_lcu(compile(h, 1));
  EXPECT_DOUBLE_EQ(prog.lambda, 4.0);
  ASSERT_EQ(prog.prep.size(), 2u);
  EXPECT_NEAR(prog.prep[0].amplitude, std::sqrt(0.75), 1e-15);
  EXPECT_NEAR(prog.prep[1].amplitude, 0.5, 1e-15);
  EXPECT_NEAR(std::abs(prog.select[1].phase + 1.0), 0.0, 1e-15);
  const RealVector amps = prep_vector(prog);
  EXPECT_NEAR(amps.squaredNorm(), 1.0, 1e-15);
  EXPECT_LT(testing::rel_frobenius(testing::dense(lcu_operator(prog)), testing::dense(h)), 1e-15);
}

TEST(CompileLcu, H2Normalization) {
  const PauliSum h = testing::h2_subset();
  const auto prog = compile_lcu(compile(h, 2));
  double l1 = 0.0;
  for (const auto& [c, s] : testing::h2_terms()) l1 += std::abs(c);
  EXPECT_NEAR(prog.lambda, l1, 1e-14);
  EXPECT_NEAR(prog.lambda, 1.212874, 1e-6);
  EXPECT_EQ(prog.a_left, index_qubits(prog.n_left));
  EXPECT_EQ(prog.a_right, index_qubits(prog.n_right));
  EXPECT_CDMPO_ERROR(compile_lcu(set_bridge(compile(h, 2), {})), ErrorCode::ZeroOperator);
}

TEST(BlockEncoding, ReproducesOperator) {
  std::mt19937_64 rng(157);
  std::vector<PauliSum> ops{testing::h2_subset()};
  for (int k = 0; k < 6; ++k) ops.push_back(testing::random_sum(rng, 2 + k % 3, 7, k % 2 == 1));
  for (const auto& h : ops) {
    const auto prog = compile_lcu(compile(h, h.n_sites() / 2));
    const auto be = block_encoding_dense(prog);
    EXPECT_LT(be.prep_norm_error, 1e-14);
    EXPECT_LT(testing::rel_frobenius(prog.lambda * be.block, testing::dense(h)), 1e-12);
    EXPECT_TRUE(is_unitary(be.column, 1e-12));
    const V phi0 = V::Unit(Eigen::Index{1} << h.n_sites(), 1);
    const double expected = (testing::dense(h) * phi0).squaredNorm() / (prog.lambda * prog.lambda);
    EXPECT_NEAR(be.success_probability(phi0), expected, 1e-12);
  }
}

TEST(Select, FactorizationAndOracle) {
  std::mt19937_64 rng(163);
  for (int k = 0; k < 5; ++k) {
    const PauliSum h = testing::random_sum(rng, 3, 3 + k, true);
    const auto prog = compile_lcu(compile(h, 1 + k % 2));
    const auto f = select_factorized_dense(prog);
    const M plain = select_dense(prog, false);
    const M full = select_dense(prog, true);
    EXPECT_LT((plain - f.select_left * f.select_right).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((f.select_left * f.select_right - f.select_right * f.select_left).cwiseAbs().maxCoeff(),
              1e-14);
    EXPECT_LT((full - select_oracle(prog)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_TRUE(is_unitary(full, 1e-13));
  }
}

TEST(Prep, HouseholderCompletion) {
  std::mt19937_64 rng(167);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (Eigen::Index d : {1, 2, 4, 8}) {
    RealVector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = u(rng);
    v.normalize();
    const M p = prep_unitary(v);
    EXPECT_TRUE(is_unitary(p, 1e-14));
    EXPECT_LT((p.col(0) - v.cast<cplx>()).norm(), 1e-14);
  }
  RealVector e0 = RealVector::Zero(4);
  e0(0) = 1.0;
  EXPECT_TRUE(is_unitary(prep_unitary(e0), 1e-15));
}

TEST(Update, KeepsSelectAndHash) {
  const PauliSum h = testing::h2_subset();
  const auto d = compile(h, 2);
  const auto prog = compile_lcu(d);
  std::map<BridgeKey, cplx> scaled;
  for (const auto& [key, value] : d.bridge.entries) scaled[key] = 2.5 * value;
  const auto up = update_coefficients(prog, set_bridge(d, scaled));
  EXPECT_EQ(up.select_hash, prog.select_hash);
  EXPECT_EQ(up.select_hash, compute_select_hash(up));
  EXPECT_NEAR(up.lambda, 2.5 * prog.lambda, 1e-14);
  for (std::size_t k = 0; k < prog.prep.size(); ++k) {
    EXPECT_NEAR(up.prep[k].amplitude, prog.prep[k].amplitude, 1e-14);
  }

  auto zeroed = d.bridge.entries;
  const BridgeKey first = zeroed.begin()->first;
  zeroed[first] = 0.0;
  const auto up0 = update_coefficients(prog, set_bridge(d, zeroed));
  EXPECT_EQ(up0.prep.front().amplitude, 0.0);
  EXPECT_EQ(up0.select.front().phase, prog.select.front().phase);
  EXPECT_EQ(up0.select_hash, prog.select_hash);
  const auto be = block_encoding_dense(up0);
  EXPECT_LT(testing::rel_frobenius(up0.lambda * be.block, testing::dense(reconstruct(
                                                             set_bridge(d, zeroed)))),
            1e-12);

  auto grown = d.bridge.entries;
  BridgeKey fresh{0, 0};
  while (grown.count(fresh)) fresh.second++;
  ASSERT_LT(fresh.second, d.bridge.cols);
  grown[fresh] = 0.1;
  EXPECT_CDMPO_ERROR(update_coefficients(prog, set_bridge(d, grown)), ErrorCode::SupportChanged);
  EXPECT_CDMPO_ERROR(update_coefficients(prog, compile(h, 1)), ErrorCode::SupportChanged);
  EXPECT_CDMPO_ERROR(update_coefficients(prog, set_bridge(d, {})), ErrorCode::ZeroOperator);
}

TEST(SelectHash, IgnoresCoefficientsOnly) {
  const PauliSum a(2, {{1.0, ps("XZ")}, {2.0, ps("ZZ")}});
  const PauliSum b(2, {{-7.0, ps("XZ")}, {cplx(0.0, 1.0), ps("ZZ")}});
  const PauliSum c(2, {{1.0, ps("XZ")}, {2.0, ps("YZ")}});
  EXPECT_EQ(compile_lcu(compile(a, 1)).select_hash, compile_lcu(compile(b, 1)).select_hash);
  EXPECT_NE(compile_lcu(compile(a, 1)).select_hash, compile_lcu(compile(c, 1)).select_hash);
  EXPECT_EQ(compile_lcu(compile(a, 1)).select_hash.size(), 64u);
}

TEST(GateListing, RoundTrip) {
  std::mt19937_64 rng(173);
  for (int k = 0; k < 4; ++k) {
    const PauliSum h = testing::random_sum(rng, 5, 9, k % 2 == 0);
    const auto prog = compile_lcu(compile(h, 2));
    const std::string text = emit_gates(prog);
    EXPECT_EQ(text.rfind("# cdmpo-gates v1\n", 0), 0u);
    EXPECT_EQ(parse_gates(text), prog);
    EXPECT_EQ(lcu_from_json(lcu_to_json(prog)), prog);
  }
  const auto real_prog = compile_lcu(compile(PauliSum(2, {{1.0, ps("XZ")}}), 1));
  EXPECT_EQ(emit_gates(real_prog).find("phase="), std::string::npos);
}

TEST(GateListing, RejectsDamagedText) {
  const auto prog = compile_lcu(compile(testing::h2_subset(), 2));
  std::string text = emit_gates(prog);
  const auto pos = text.find("select ctrl=");
  ASSERT_NE(pos, std::string::npos);
  text.insert(pos + 7, "garbage ");
  try {
    parse_gates(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GT(e.line(), 5u);
  }
  EXPECT_CDMPO_ERROR(lcu_from_json("{\"format\": \"cdmpo-lcu\"}"), ErrorCode::MalformedFile);
}

}  // namespace
}  // namespace cdmpo
