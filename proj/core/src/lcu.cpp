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

#include "cdmpo/lcu.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "cdmpo/digest.hpp"
#include "cdmpo/errors.hpp"

namespace cdmpo {
namespace {

void check_limit(std::size_t qubits, std::size_t limit) {
  if (qubits > limit) {
    throw Error(ErrorCode::TooLarge, std::to_string(qubits) + " qubits exceed the dense limit of " +
                                         std::to_string(limit));
  }
}

PauliString left_term(const LcuProgram& prog, std::size_t a) {
  const std::size_t rest = prog.n_sites - prog.cut;
  if (a >= prog.n_left) return PauliString(prog.n_sites);
  return prog.left_fragments[a].concat(PauliString(rest));
}

PauliString right_term(const LcuProgram& prog, std::size_t b) {
  if (b >= prog.n_right) return PauliString(prog.n_sites);
  return PauliString(prog.cut).concat(prog.right_fragments[b]);
}

void check_fragments(const LcuProgram& prog) {
  if (prog.left_fragments.size() != prog.n_left || prog.right_fragments.size() != prog.n_right) {
    throw Error(ErrorCode::MalformedFile, "fragment lists disagree with n_left / n_right");
  }
  if (index_qubits(prog.n_left) != prog.a_left || index_qubits(prog.n_right) != prog.a_right) {
    throw Error(ErrorCode::MalformedFile, "ancilla counts disagree with the dictionaries");
  }
  if (prog.prep.size() != prog.select.size()) {
    throw Error(ErrorCode::MalformedFile, "prep and select tables differ in length");
  }
  for (std::size_t k = 0; k < prog.prep.size(); ++k) {
    const auto& p = prog.prep[k];
    const auto& s = prog.select[k];
    if (p.a != s.a || p.b != s.b || p.a >= prog.n_left || p.b >= prog.n_right) {
      throw Error(ErrorCode::IndexOutOfRange, "prep/select pair outside the dictionaries");
    }
  }
}

}  // namespace

std::size_t index_qubits(std::size_t n) {
  std::size_t q = 0;
  while ((std::size_t{1} << q) < n) ++q;
  return q;
}

std::string compute_select_hash(const LcuProgram& prog) {
  std::ostringstream os;
  os << "cdmpo-select v1\nn_sites=" << prog.n_sites << " cut=" << prog.cut << '\n';
  for (const auto& f : prog.left_fragments) os << "L " << f.str() << '\n';
  for (const auto& f : prog.right_fragments) os << "R " << f.str() << '\n';
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& row : prog.select) pairs.emplace_back(row.a, row.b);
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [a, b] : pairs) os << "P " << a << ' ' << b << '\n';
  return sha256_hex(os.str());
}

LcuProgram compile_lcu(const BridgeDecomposition& d) {
  LcuProgram prog;
  prog.n_sites = d.n_sites;
  prog.cut = d.cut;
  prog.n_left = d.left.size();
  prog.n_right = d.right.size();
  prog.a_left = index_qubits(prog.n_left);
  prog.a_right = index_qubits(prog.n_right);
  prog.left_fragments = d.left.fragments;
  prog.right_fragments = d.right.fragments;
  for (const auto& [key, s] : d.bridge.entries) {
    if (s == cplx{}) continue;
    prog.lambda += std::abs(s);
  }
  if (prog.lambda == 0.0) throw Error(ErrorCode::ZeroOperator, "bridge has no nonzero entry");
  for (const auto& [key, s] : d.bridge.entries) {
    if (s == cplx{}) continue;
    prog.prep.push_back({key.first, key.second, std::sqrt(std::abs(s) / prog.lambda)});
    prog.select.push_back({key.first, key.second, d.left.fragments[key.first],
                           d.right.fragments[key.second], s / std::abs(s)});
  }
  prog.select_hash = compute_select_hash(prog);
  return prog;
}

LcuProgram update_coefficients(const LcuProgram& prog, const BridgeDecomposition& d) {
  if (d.left.fragments != prog.left_fragments || d.right.fragments != prog.right_fragments ||
      d.cut != prog.cut || d.n_sites != prog.n_sites) {
    throw Error(ErrorCode::SupportChanged, "dictionaries differ from the compiled program");
  }
  std::map<BridgeKey, std::size_t> row_of;
  for (std::size_t k = 0; k < prog.select.size(); ++k) {
    row_of[{prog.select[k].a, prog.select[k].b}] = k;
  }
  std::vector<std::string> outside;
  double lambda = 0.0;
  for (const auto& [key, s] : d.bridge.entries) {
    if (s == cplx{}) continue;
    if (!row_of.contains(key)) {
      outside.push_back("(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")");
    }
    lambda += std::abs(s);
  }
  if (!outside.empty()) {
    std::string list;
    for (const auto& o : outside) list += (list.empty() ? "" : " ") + o;
    throw Error(ErrorCode::SupportChanged,
                "new active pairs require recompilation: " + list);
  }
  if (lambda == 0.0) throw Error(ErrorCode::ZeroOperator, "updated bridge is zero");
  LcuProgram out = prog;
  out.lambda = lambda;
  for (auto& p : out.prep) p.amplitude = 0.0;
  for (const auto& [key, s] : d.bridge.entries) {
    if (s == cplx{}) continue;
    const std::size_t k = row_of.at(key);
    out.prep[k].amplitude = std::sqrt(std::abs(s) / lambda);
    out.select[k].phase = s / std::abs(s);
  }
  out.select_hash = compute_select_hash(out);
  return out;
}

PauliSum lcu_operator(const LcuProgram& prog) {
  std::vector<PauliTerm> terms;
  for (std::size_t k = 0; k < prog.prep.size(); ++k) {
    const auto& row = prog.select[k];
    const double amp = prog.prep[k].amplitude;
    terms.push_back({prog.lambda * amp * amp * row.phase, row.left.concat(row.right)});
  }
  return PauliSum(prog.n_sites, std::move(terms));
}

RealVector prep_vector(const LcuProgram& prog) {
  RealVector v = RealVector::Zero(Eigen::Index{1} << prog.ancillas());
  for (const auto& p : prog.prep) v(static_cast<Eigen::Index>(prog.index_of(p.a, p.b))) = p.amplitude;
  return v;
}

Matrix prep_unitary(const RealVector& amplitudes) {
  const Eigen::Index n = amplitudes.size();
  Vector u = -amplitudes.cast<cplx>();
  u(0) += 1.0;
  const double un2 = u.squaredNorm();
  Matrix prep = Matrix::Identity(n, n);
  if (un2 > 0.0) prep -= (2.0 / un2) * u * u.adjoint();
  return prep;
}

Matrix select_dense(const LcuProgram& prog, bool with_phases, std::size_t dense_limit) {
  check_fragments(prog);
  const SelectFactors f = select_factorized_dense(prog, dense_limit);
  Matrix sel = f.select_left * f.select_right;
  if (with_phases) {
    const Eigen::Index sys = Eigen::Index{1} << prog.n_sites;
    for (const auto& row : prog.select) {
      const auto k = static_cast<Eigen::Index>(prog.index_of(row.a, row.b));
      sel.block(k * sys, k * sys, sys, sys) *= row.phase;
    }
  }
  return sel;
}

SelectFactors select_factorized_dense(const LcuProgram& prog, std::size_t dense_limit) {
  check_fragments(prog);
  check_limit(prog.n_sites + prog.ancillas(), dense_limit);
  const Eigen::Index sys = Eigen::Index{1} << prog.n_sites;
  const std::size_t n_a = std::size_t{1} << prog.a_left;
  const std::size_t n_b = std::size_t{1} << prog.a_right;
  const Eigen::Index total = static_cast<Eigen::Index>(n_a * n_b) * sys;
  SelectFactors f{Matrix::Zero(total, total), Matrix::Zero(total, total)};
  std::vector<Matrix> lefts(n_a);
  std::vector<Matrix> rights(n_b);
  for (std::size_t a = 0; a < n_a; ++a) lefts[a] = to_dense(left_term(prog, a), prog.n_sites);
  for (std::size_t b = 0; b < n_b; ++b) rights[b] = to_dense(right_term(prog, b), prog.n_sites);
  for (std::size_t a = 0; a < n_a; ++a) {
    for (std::size_t b = 0; b < n_b; ++b) {
      const auto k = static_cast<Eigen::Index>(prog.index_of(a, b));
      f.select_left.block(k * sys, k * sys, sys, sys) = lefts[a];
      f.select_right.block(k * sys, k * sys, sys, sys) = rights[b];
    }
  }
  return f;
}

double BlockEncoding::success_probability(const Vector& phi0) const {
  if (phi0.size() != block.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "reference dimension differs from the block");
  }
  return (block * phi0).squaredNorm();
}

BlockEncoding block_encoding_dense(const LcuProgram& prog, std::size_t dense_limit) {
  check_fragments(prog);
  check_limit(prog.n_sites + prog.ancillas(), dense_limit);
  const Eigen::Index sys = Eigen::Index{1} << prog.n_sites;
  const RealVector v = prep_vector(prog);
  const Matrix prep = prep_unitary(v);
  const Vector p0 = prep.col(0);
  const Eigen::Index dim_a = v.size();

  // Select (Prep|0> (x) I) has block k equal to p0[k] U_k.
  std::vector<std::pair<Eigen::Index, Matrix>> terms;
  std::map<Eigen::Index, cplx> phase_of;
  for (const auto& row : prog.select) {
    phase_of[static_cast<Eigen::Index>(prog.index_of(row.a, row.b))] = row.phase;
  }
  for (Eigen::Index k = 0; k < dim_a; ++k) {
    if (p0(k) == cplx{}) continue;
    const std::size_t a = static_cast<std::size_t>(k) >> prog.a_right;
    const std::size_t b = static_cast<std::size_t>(k) & ((std::size_t{1} << prog.a_right) - 1);
    const PauliProduct lr = pauli_product(left_term(prog, a), right_term(prog, b));
    const auto it = phase_of.find(k);
    const cplx phase = it == phase_of.end() ? cplx{1.0, 0.0} : it->second;
    terms.emplace_back(k, p0(k) * phase * lr.phase.value() * to_dense(lr.result, prog.n_sites));
  }

  BlockEncoding out;
  out.column = Matrix::Zero(dim_a * sys, sys);
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    auto blk = out.column.block(i * sys, 0, sys, sys);
    for (const auto& [k, u] : terms) blk += std::conj(prep(k, i)) * u;
  }
  out.block = out.column.topRows(sys);
  out.prep_norm_error = std::abs(v.squaredNorm() - 1.0);
  return out;
}

}  // namespace cdmpo
