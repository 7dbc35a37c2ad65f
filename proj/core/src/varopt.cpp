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

#include "cdmpo/varopt.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <map>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "cdmpo/errors.hpp"
#include "cdmpo/pauli_io.hpp"
#include "ritz_detail.hpp"

namespace cdmpo {
namespace {

// X and Y become X, I and Z become I: the bit-flip pattern of a string.
PauliString flip_pattern(const PauliString& p) {
  PauliString out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == Pauli::X || p[i] == Pauli::Y) out.set(i, Pauli::X);
  }
  return out;
}

double frobenius(const Matrix& m) { return m.norm(); }

RitzSolution finish(const EffectivePencil& p, const Matrix& n_used, double energy, Vector x,
                    double reg) {
  RitzSolution s;
  s.energy = energy;
  const double nn = std::sqrt(std::max(0.0, (x.adjoint() * n_used * x)(0, 0).real()));
  if (nn > 0.0) x /= nn;
  // Deterministic sign: first entry of largest magnitude made real positive.
  Eigen::Index pivot = 0;
  x.cwiseAbs().maxCoeff(&pivot);
  if (std::abs(x(pivot)) > 0.0) x *= std::conj(x(pivot)) / std::abs(x(pivot));
  s.residual_norm = (p.h_eff * x - energy * (n_used * x)).norm();
  s.coefficients = std::move(x);
  s.regularization = reg;
  return s;
}

}  // namespace

BasisState BasisState::parse(std::string_view text) {
  BasisState b;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::BadReference,
                  "reference must be a string over {0,1}, got '" + std::string(text) + "'");
    }
    b.bits.push_back(c == '1');
  }
  if (b.bits.empty()) throw Error(ErrorCode::BadReference, "empty reference bitstring");
  return b;
}

std::string BasisState::str() const {
  std::string s;
  for (bool bit : bits) s.push_back(bit ? '1' : '0');
  return s;
}

Vector BasisState::dense() const {
  Eigen::Index index = 0;
  for (bool bit : bits) index = index * 2 + (bit ? 1 : 0);
  Vector v = Vector::Zero(Eigen::Index{1} << bits.size());
  v(index) = 1.0;
  return v;
}

double BasisState::diagonal_sign(const PauliString& p) const {
  if (!p.is_diagonal()) return 0.0;
  double sign = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == Pauli::Z && bits[i]) sign = -sign;
  }
  return sign;
}

EffectivePencil assemble_pencil(const PauliSum& h, const std::vector<PauliString>& pool,
                                const BasisState& reference, AssemblyPath path) {
  if (pool.empty()) throw Error(ErrorCode::EmptyInput, "pool is empty");
  if (reference.size() != h.n_sites()) {
    throw Error(ErrorCode::BadReference, "reference length " + std::to_string(reference.size()) +
                                             " differs from " + std::to_string(h.n_sites()) +
                                             " sites");
  }
  std::unordered_set<PauliString> seen;
  for (const auto& s : pool) {
    if (s.size() != h.n_sites()) {
      throw Error(ErrorCode::LengthMismatch, "pool string " + s.str() + " has the wrong length");
    }
    if (!seen.insert(s).second) {
      throw Error(ErrorCode::DuplicatePoolString, "pool contains " + s.str() + " twice");
    }
  }

  EffectivePencil p;
  p.basis = pool;
  const auto d = static_cast<Eigen::Index>(pool.size());
  p.h_eff = Matrix::Zero(d, d);
  p.n_eff = Matrix::Zero(d, d);

  if (path == AssemblyPath::dense) {
    const Vector ref = reference.dense();
    Matrix phi(ref.size(), d);
    for (Eigen::Index j = 0; j < d; ++j) phi.col(j) = cdmpo::apply(pool[static_cast<std::size_t>(j)], ref);
    Matrix hphi(ref.size(), d);
    for (Eigen::Index k = 0; k < d; ++k) hphi.col(k) = cdmpo::apply(h, phi.col(k));
    p.h_eff = phi.adjoint() * hphi;
    p.n_eff = phi.adjoint() * phi;
    return p;
  }

  std::unordered_map<PauliString, std::vector<Eigen::Index>> by_flip;
  for (Eigen::Index j = 0; j < d; ++j) {
    by_flip[flip_pattern(pool[static_cast<std::size_t>(j)])].push_back(j);
  }
  auto accumulate = [&](Matrix& target, Eigen::Index k, cplx weight, const PauliProduct& right) {
    const auto it = by_flip.find(flip_pattern(right.result));
    if (it == by_flip.end()) return;
    for (Eigen::Index j : it->second) {
      const PauliProduct full = pauli_product(pool[static_cast<std::size_t>(j)], right.result);
      const double sign = reference.diagonal_sign(full.result);
      target(j, k) += weight * (full.phase * right.phase).value() * sign;
    }
  };
  for (Eigen::Index k = 0; k < d; ++k) {
    const PauliString& pk = pool[static_cast<std::size_t>(k)];
    accumulate(p.n_eff, k, cplx{1.0, 0.0}, PauliProduct{Phase{}, pk});
    for (const auto& term : h.terms()) {
      accumulate(p.h_eff, k, term.coeff, pauli_product(term.string, pk));
    }
  }
  return p;
}

EffectivePencil assemble_bridge_pencil(const PauliSum& h, const BridgeDecomposition& d,
                                       const BasisState& reference) {
  std::vector<PauliString> pool;
  std::vector<BridgeKey> pairs;
  for (std::size_t a = 0; a < d.left.size(); ++a) {
    for (std::size_t b = 0; b < d.right.size(); ++b) {
      pool.push_back(d.product({a, b}));
      pairs.emplace_back(a, b);
    }
  }
  EffectivePencil p = assemble_pencil(h, pool, reference);
  p.bridge_pairs = std::move(pairs);
  return p;
}

RitzSolution solve_ritz_dense(const EffectivePencil& p, const RitzOptions& opts) {
  const auto d = static_cast<Eigen::Index>(p.dim());
  if (d == 0) throw Error(ErrorCode::EmptyInput, "pencil is empty");
  const double reg = opts.reg.value_or(1e-10 * p.n_eff.trace().real() / static_cast<double>(d));
  const Matrix n_used = p.n_eff + reg * Matrix::Identity(d, d);
  if (reg == 0.0 && opts.drop_tol == 0.0) {
    Eigen::SelfAdjointEigenSolver<Matrix> en(0.5 * (n_used + n_used.adjoint()),
                                             Eigen::EigenvaluesOnly);
    if (en.eigenvalues()(0) <= 1e-12 * std::max(1.0, en.eigenvalues().maxCoeff())) {
      throw Error(ErrorCode::SingularPencil,
                  "N_eff is numerically singular; supply a regularization shift");
    }
  }
  const detail::ReducedEigen eig = detail::reduced_eigen(p.h_eff, n_used, opts.drop_tol);
  if (eig.kept == 0) {
    throw Error(ErrorCode::SingularPencil, "N_eff has no direction above the drop tolerance");
  }
  RitzSolution s = finish(p, n_used, eig.values(0), eig.vectors.col(0), reg);
  s.retained_dim = static_cast<std::size_t>(eig.kept);
  s.degenerate = eig.kept > 1 && eig.values(1) - eig.values(0) < 1e-10;
  return s;
}

RitzSolution solve_ritz_lobpcg(const EffectivePencil& p, const LobpcgOptions& opts) {
  const auto d = static_cast<Eigen::Index>(p.dim());
  if (d == 0) throw Error(ErrorCode::EmptyInput, "pencil is empty");
  const double reg = opts.reg.value_or(1e-10 * p.n_eff.trace().real() / static_cast<double>(d));
  const Matrix n_used = p.n_eff + reg * Matrix::Identity(d, d);
  const LobpcgResult r = lobpcg_smallest([&](const Matrix& x) -> Matrix { return p.h_eff * x; },
                                         [&](const Matrix& x) -> Matrix { return n_used * x; },
                                         static_cast<std::size_t>(d), frobenius(p.h_eff),
                                         frobenius(n_used), opts);
  RitzSolution s = finish(p, n_used, r.values(0), r.vectors.col(0), reg);
  s.converged = r.converged;
  s.iterations = r.iterations;
  s.retained_dim = static_cast<std::size_t>(d);
  s.degenerate = r.values.size() > 1 && r.values(1) - r.values(0) < 1e-10;
  return s;
}

Vector target_overlaps(const EffectivePencil& p, const BasisState& reference,
                       const Vector& target) {
  const Vector ref = reference.dense();
  if (target.size() != ref.size()) {
    throw Error(ErrorCode::DimensionMismatch, "target dimension differs from the reference");
  }
  Vector b(static_cast<Eigen::Index>(p.dim()));
  for (std::size_t j = 0; j < p.dim(); ++j) {
    b(static_cast<Eigen::Index>(j)) = cdmpo::apply(p.basis[j], ref).dot(target);
  }
  return b;
}

Vector fidelity_fit(const EffectivePencil& p, const Vector& b, double eta) {
  const Eigen::Index d = p.n_eff.rows();
  if (b.size() != d) throw Error(ErrorCode::DimensionMismatch, "overlap vector size differs");
  if (eta < 0.0) throw Error(ErrorCode::DimensionMismatch, "eta must be non-negative");
  const Matrix a = p.n_eff + eta * Matrix::Identity(d, d);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (a + a.adjoint()));
  const RealVector& mu = eig.eigenvalues();
  const double mu_max = std::max(std::abs(mu.maxCoeff()), 1e-300);
  if (mu.minCoeff() <= 1e-12 * mu_max) {
    throw Error(ErrorCode::SingularSystem, "N_eff + eta I is singular; increase eta");
  }
  const Matrix& v = eig.eigenvectors();
  return v * (v.adjoint() * b).cwiseQuotient(mu.cast<cplx>());
}

std::vector<SweepRow> energy_vs_samples_sweep(const PauliSum& h, const Mps& reference_mps,
                                              const std::vector<std::size_t>& grid,
                                              const SamplerConfig& cfg, const BasisState& phi0) {
  if (grid.empty()) throw Error(ErrorCode::EmptyInput, "sample grid is empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid[k] == 0 || (k > 0 && grid[k] <= grid[k - 1])) {
      throw Error(ErrorCode::IndexOutOfRange, "sample grid must be positive and increasing");
    }
  }
  if (phi0.size() != h.n_sites()) throw Error(ErrorCode::BadReference, "reference length mismatch");
  const std::vector<PauliSample> samples = draw_samples(reference_mps, grid.back(), cfg.seed);
  const double reference_energy = mps_expectation(h, reference_mps).real();
  double phi0_energy = 0.0;
  for (const auto& t : h.terms()) phi0_energy += (t.coeff * phi0.diagonal_sign(t.string)).real();

  std::vector<PauliString> pool;
  std::unordered_set<PauliString> in_pool;
  std::vector<SweepRow> rows;
  for (std::size_t g : grid) {
    const std::vector<PauliSample> prefix(samples.begin(),
                                          samples.begin() + static_cast<std::ptrdiff_t>(g));
    const SampledPool curated = curate(aggregate(h.n_sites(), prefix), cfg.keep_iz);
    for (const auto& c : curated.curated) {
      if (in_pool.insert(c.string).second) pool.push_back(c.string);
    }
    SweepRow row;
    row.n_samples = g;
    row.p_pool = pool.size();
    row.reference_energy = reference_energy;
    if (pool.empty()) {
      row.energy = phi0_energy;
      row.fallback = true;
    } else {
      RitzOptions opts;
      opts.reg = 0.0;
      row.energy = solve_ritz_dense(assemble_pencil(h, pool, phi0), opts).energy;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "n_samples,p_pool,energy,reference_energy\n";
  for (const auto& r : rows) {
    os << r.n_samples << ',' << r.p_pool << ',' << format_coefficient(cplx{r.energy, 0.0}) << ','
       << format_coefficient(cplx{r.reference_energy, 0.0}) << '\n';
  }
}

BridgeDecomposition coefficients_to_bridge(const BridgeDecomposition& d,
                                           const std::vector<PauliString>& basis,
                                           const Vector& x) {
  if (static_cast<Eigen::Index>(basis.size()) != x.size()) {
    throw Error(ErrorCode::DimensionMismatch, "basis and coefficient vector differ in size");
  }
  std::map<BridgeKey, cplx> entries;
  for (const auto& [key, value] : d.bridge.entries) entries[key] = cplx{};
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].size() != d.n_sites) {
      throw Error(ErrorCode::LengthMismatch,
                  "basis string " + basis[j].str() + " has the wrong length");
    }
    const auto a = d.left.find(basis[j].slice(0, d.cut));
    const auto b = d.right.find(basis[j].slice(d.cut, d.n_sites));
    if (!a || !b) {
      throw Error(ErrorCode::SupportChanged,
                  "basis string " + basis[j].str() + " is outside the bridge dictionaries");
    }
    entries[{*a, *b}] += x(static_cast<Eigen::Index>(j));
  }
  return set_bridge(d, entries);
}

std::string pencil_to_json(const EffectivePencil& p) {
  if (p.dim() > 64) throw Error(ErrorCode::TooLarge, "pencil dumps are limited to 64 states");
  auto matrix = [](const Matrix& m) {
    auto rows = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      auto row = nlohmann::ordered_json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
      rows.push_back(std::move(row));
    }
    return rows;
  };
  nlohmann::ordered_json doc;
  doc["format"] = "cdmpo-pencil";
  doc["version"] = 1;
  doc["dim"] = p.dim();
  std::vector<std::string> labels;
  for (const auto& s : p.basis) labels.push_back(s.str());
  doc["basis"] = labels;
  if (!p.bridge_pairs.empty()) {
    auto pairs = nlohmann::ordered_json::array();
    for (const auto& [a, b] : p.bridge_pairs) pairs.push_back({a, b});
    doc["bridge_pairs"] = std::move(pairs);
  }
  doc["h_eff"] = matrix(p.h_eff);
  doc["n_eff"] = matrix(p.n_eff);
  return doc.dump(2) + "\n";
}

}  // namespace cdmpo
