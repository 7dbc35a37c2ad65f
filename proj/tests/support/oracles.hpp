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

// Dense reference implementations used as test oracles. These deliberately
// avoid the library's Pauli kernels: matrices come from explicit Kronecker
// products of 2x2 literals.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdmpo/pauli.hpp"

namespace cdmpo::testing {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;
using V = Eigen::VectorXcd;
using Terms = std::vector<std::pair<C, std::string>>;

inline M sigma(char c) {
  M m(2, 2);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad Pauli symbol");
  }
  return m;
}

inline M kron(const M& a, const M& b) {
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline M kron_string(const std::string& s) {
  M out = M::Identity(1, 1);
  for (char c : s) out = kron(out, sigma(c));
  return out;
}

inline M dense(const Terms& terms) {
  M out;
  for (const auto& [c, s] : terms) {
    if (out.size() == 0) out = M::Zero(Eigen::Index{1} << s.size(), Eigen::Index{1} << s.size());
    out += c * kron_string(s);
  }
  return out;
}

inline Terms terms_of(const PauliSum& op) {
  Terms t;
  for (const auto& term : op.terms()) t.emplace_back(term.coeff, term.string.str());
  return t;
}

inline M dense(const PauliSum& op) {
  if (op.empty()) {
    const auto d = Eigen::Index{1} << op.n_sites();
    return M::Zero(d, d);
  }
  return dense(terms_of(op));
}

inline std::vector<std::string> all_strings(std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::string> next;
    for (const auto& s : out)
      for (char c : std::string("IXYZ")) next.push_back(s + c);
    out = std::move(next);
  }
  return out;
}

inline std::string random_string(std::mt19937_64& rng, std::size_t n) {
  static const char kSym[] = "IXYZ";
  std::uniform_int_distribution<int> pick(0, 3);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(kSym[pick(rng)]);
  return s;
}

/// k random terms with real coefficients in [-1, 1] (complex when asked).
inline PauliSum random_sum(std::mt19937_64& rng, std::size_t n, std::size_t k,
                           bool complex_coeffs = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<PauliTerm> terms;
  for (std::size_t i = 0; i < k; ++i) {
    const C c = complex_coeffs ? C(u(rng), u(rng)) : C(u(rng), 0.0);
    terms.push_back({c, PauliString::parse(random_string(rng, n))});
  }
  return PauliSum(n, std::move(terms));
}

inline V random_state(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  V v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = C(g(rng), g(rng));
  return v.normalized();
}

inline M random_hermitian(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> g;
  M a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = C(g(rng), g(rng));
  return 0.5 * (a + a.adjoint());
}

inline double min_eigenvalue(const M& h) {
  Eigen::SelfAdjointEigenSolver<M> e(h, Eigen::EigenvaluesOnly);
  return e.eigenvalues()(0);
}

/// <psi|P|psi>^2 / 2^N for every string, straight from dense matrices.
inline double pauli_weight(const V& psi, const std::string& s) {
  const C e = psi.dot(kron_string(s) * psi);
  return std::norm(e) / static_cast<double>(Eigen::Index{1} << s.size());
}

inline std::string fixture_path(const std::string& name) {
  return std::string(CDMPO_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// The nine-term H2 subset, coefficients as tabulated.
inline Terms h2_terms() {
  return {{-0.098864, "IIII"}, {0.171198, "ZIII"},  {-0.222786, "IIZI"},
          {0.168622, "ZZII"},  {0.045322, "YXXY"},  {-0.045322, "XXYY"},
          {0.120545, "ZIZI"},  {0.165867, "IZZI"},  {0.174348, "IIZZ"}};
}

inline PauliSum h2_subset() {
  std::vector<PauliTerm> terms;
  for (const auto& [c, s] : h2_terms()) terms.push_back({c, PauliString::parse(s)});
  return PauliSum(4, std::move(terms));
}

inline double rel_frobenius(const M& a, const M& b) {
  const double nb = b.norm();
  return nb == 0.0 ? a.norm() : (a - b).norm() / nb;
}

}  // namespace cdmpo::testing
