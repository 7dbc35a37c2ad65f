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
#include <sstream>

#include "cdmpo/pauli_io.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"

namespace cdmpo {
namespace {

TEST(PauliIo, ParsesCoefficientForms) {
  EXPECT_EQ(parse_coefficient("-0.5"), cplx(-0.5, 0.0));
  EXPECT_EQ(parse_coefficient("+2e-3"), cplx(2e-3, 0.0));
  EXPECT_EQ(parse_coefficient("1.5-2i"), cplx(1.5, -2.0));
  EXPECT_EQ(parse_coefficient("0.25i"), cplx(0.0, 0.25));
  EXPECT_EQ(parse_coefficient("-1+1e-2i"), cplx(-1.0, 0.01));
  EXPECT_CDMPO_ERROR(parse_coefficient("1+i"), ErrorCode::MalformedLine);
  EXPECT_CDMPO_ERROR(parse_coefficient("--1"), ErrorCode::MalformedLine);
  EXPECT_CDMPO_ERROR(parse_coefficient("abc"), ErrorCode::MalformedLine);
}

TEST(PauliIo, ParsesFileWithCommentsAndCrlf) {
  const auto op = parse_pauli_sum("# header\r\n 0.5 XZ  # trailing\r\n\r\n-1 ZZ\r\n0.25 XZ\n");
  ASSERT_EQ(op.n_sites(), 2u);
  ASSERT_EQ(op.size(), 2u);
  EXPECT_EQ(op.terms()[0].string.str(), "XZ");
  EXPECT_EQ(op.terms()[0].coeff, cplx(0.75, 0.0));
  EXPECT_EQ(op.coefficient(PauliString::parse("ZZ")), cplx(-1.0, 0.0));
}

TEST(PauliIo, ReportsLineAndColumn) {
  try {
    parse_pauli_sum("1 XX\n2 XQ\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedLine);
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GE(e.column(), 1u);
  }
  try {
    parse_pauli_sum("1 XX\n2 XXX\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::InconsistentLength);
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_CDMPO_ERROR(parse_pauli_sum(""), ErrorCode::EmptyInput);
  EXPECT_CDMPO_ERROR(parse_pauli_sum("# only a comment\n"), ErrorCode::EmptyInput);
}

TEST(PauliIo, RoundTripIsExact) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto op = testing::random_sum(rng, 1 + trial % 40, 1 + trial % 13, trial % 2 == 0);
    const auto back = parse_pauli_sum(format_pauli_sum(op));
    EXPECT_EQ(back, op);
  }
}

TEST(PauliIo, EmptySumRoundTrips) {
  const PauliSum empty(3);
  const std::string text = format_pauli_sum(empty);
  EXPECT_EQ(text, "# n_sites=3\n");
  EXPECT_EQ(parse_pauli_sum(text), empty);
}

TEST(PauliIo, ReadsShippedFixture) {
  const auto op = parse_pauli_sum(testing::read_file(testing::fixture_path("h2_subset.pauli")));
  EXPECT_EQ(op, testing::h2_subset());
  EXPECT_NEAR(op.l1_norm(), 1.212874, 1e-12);
}

}  // namespace
}  // namespace cdmpo
