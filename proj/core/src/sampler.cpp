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

#include "cdmpo/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cdmpo/errors.hpp"
#include "cdmpo/pauli_io.hpp"

namespace cdmpo {
namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// The four products A^{s dagger} E A^{s'} indexed [s][s'].
std::array<std::array<Matrix, 2>, 2> sandwiches(const Matrix& env, const MpsTensor& a) {
  const Matrix a0 = a.slice(0);
  const Matrix a1 = a.slice(1);
  const Matrix l0 = a0.adjoint() * env;
  const Matrix l1 = a1.adjoint() * env;
  return {{{l0 * a0, l0 * a1}, {l1 * a0, l1 * a1}}};
}

Matrix combine(const std::array<std::array<Matrix, 2>, 2>& m, Pauli alpha) {
  const cplx i{0.0, 1.0};
  switch (alpha) {
    case Pauli::I: return m[0][0] + m[1][1];
    case Pauli::X: return m[0][1] + m[1][0];
    case Pauli::Y: return -i * m[0][1] + i * m[1][0];
    case Pauli::Z: return m[0][0] - m[1][1];
  }
  return {};
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t index)
    : state_(splitmix64(seed ^ splitmix64(index ^ 0x6a09e667f3bcc909ULL))) {}

std::uint64_t CounterRng::next_u64() noexcept {
  state_ += 0x9e3779b97f4a7c15ULL;
  return splitmix64(state_);
}

double CounterRng::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::string_view to_string(PoolTag t) { return t == PoolTag::IZ ? "IZ" : "XY"; }

std::array<double, 4> conditional_weights(const Matrix& env, const MpsTensor& a) {
  const auto m = sandwiches(env, a);
  std::array<double, 4> w{};
  for (std::size_t k = 0; k < 4; ++k) w[k] = combine(m, kAllPaulis[k]).squaredNorm();
  return w;
}

Matrix advance_environment(const Matrix& env, const MpsTensor& a, Pauli alpha) {
  return combine(sandwiches(env, a), alpha);
}

void check_sampling_gauge(const Mps& m) {
  m.validate();
  const double gauge_err = max_right_gauge_error(m);
  if (gauge_err > 1e-10) {
    throw Error(ErrorCode::GaugeViolation,
                "MPS is not right-canonical (max deviation " + std::to_string(gauge_err) + ")");
  }
  const double norm2 = mps_norm_squared(m);
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw Error(ErrorCode::NotNormalized, "MPS norm^2 = " + std::to_string(norm2));
  }
}

std::vector<PauliSample> draw_samples(const Mps& m, std::size_t count, std::uint64_t seed,
                                      std::uint64_t first_index) {
  check_sampling_gauge(m);
  const std::size_t n = m.n_sites();
  std::vector<PauliSample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    CounterRng rng(seed, first_index + k);
    PauliSample sample{PauliString(n), 1.0};
    Matrix env = Matrix::Identity(1, 1);
    for (std::size_t j = 0; j < n; ++j) {
      const auto m4 = sandwiches(env, m.tensors[j]);
      std::array<Matrix, 4> next;
      std::array<double, 4> w{};
      double total = 0.0;
      for (std::size_t a = 0; a < 4; ++a) {
        next[a] = combine(m4, kAllPaulis[a]);
        w[a] = next[a].squaredNorm();
        total += w[a];
      }
      const double u = rng.uniform() * total;
      std::size_t pick = 0;
      double acc = w[0];
      while (pick < 3 && (u >= acc || w[pick] == 0.0)) acc += w[++pick];
      // Guard against landing on a zero-weight symbol through rounding.
      while (w[pick] == 0.0 && pick > 0) --pick;
      sample.string.set(j, kAllPaulis[pick]);
      sample.probability *= w[pick] / total;
      // Rescale so the environment stays O(1); conditionals are ratios.
      env = next[pick] / std::sqrt(w[pick]);
    }
    out.push_back(std::move(sample));
  }
  return out;
}

double chain_rule_probability(const Mps& m, const PauliString& p) {
  check_sampling_gauge(m);
  if (p.size() != m.n_sites()) {
    throw Error(ErrorCode::LengthMismatch, "string length differs from the chain length");
  }
  double prob = 1.0;
  Matrix env = Matrix::Identity(1, 1);
  for (std::size_t j = 0; j < m.n_sites(); ++j) {
    const auto w = conditional_weights(env, m.tensors[j]);
    const double total = w[0] + w[1] + w[2] + w[3];
    const auto k = static_cast<std::size_t>(p[j]);
    if (w[k] == 0.0 || total == 0.0) return 0.0;
    prob *= w[k] / total;
    env = advance_environment(env, m.tensors[j], p[j]) / std::sqrt(w[k]);
  }
  return prob;
}

SampledPool aggregate(std::size_t n_sites, const std::vector<PauliSample>& samples) {
  std::map<PauliString, PoolEntry> by_string;
  for (const auto& s : samples) {
    auto& e = by_string[s.string];
    e.string = s.string;
    ++e.multiplicity;
    e.probability = s.probability;
  }
  SampledPool pool;
  pool.n_sites = n_sites;
  pool.n_samples = samples.size();
  for (auto& [_, e] : by_string) pool.entries.push_back(std::move(e));
  return pool;
}

SampledPool sample_strings(const Mps& m, const SamplerConfig& cfg) {
  if (cfg.n_samples == 0) throw Error(ErrorCode::EmptyInput, "n_samples must be positive");
  return aggregate(m.n_sites(), draw_samples(m, cfg.n_samples, cfg.seed));
}

SampledPool curate(const SampledPool& pool, std::size_t keep_iz) {
  SampledPool out = pool;
  out.curated.clear();
  std::vector<const PoolEntry*> diagonal;
  std::vector<const PoolEntry*> offdiagonal;
  for (const auto& e : pool.entries) {
    if (!e.string.is_diagonal()) {
      offdiagonal.push_back(&e);
    } else if (!e.string.is_identity()) {
      diagonal.push_back(&e);
    }
  }
  std::stable_sort(diagonal.begin(), diagonal.end(), [](const PoolEntry* a, const PoolEntry* b) {
    if (a->multiplicity != b->multiplicity) return a->multiplicity > b->multiplicity;
    return a->string < b->string;
  });
  std::sort(offdiagonal.begin(), offdiagonal.end(),
            [](const PoolEntry* a, const PoolEntry* b) { return a->string < b->string; });
  const std::size_t n_iz = std::min(keep_iz, diagonal.size());
  for (std::size_t k = 0; k < n_iz; ++k) out.curated.push_back({diagonal[k]->string, PoolTag::IZ});
  for (const auto* e : offdiagonal) out.curated.push_back({e->string, PoolTag::XY});
  return out;
}

PauliSum curated_operator(const SampledPool& pool) {
  std::vector<PauliTerm> terms;
  for (const auto& c : pool.curated) terms.push_back({cplx{1.0, 0.0}, c.string});
  return PauliSum(pool.n_sites, std::move(terms));
}

void write_pool_text(std::ostream& os, const SampledPool& pool) {
  os << "# n_sites=" << pool.n_sites << " n_samples=" << pool.n_samples << '\n';
  for (const auto& e : pool.entries) {
    os << e.multiplicity << ' ' << format_coefficient(cplx{e.probability, 0.0}) << ' '
       << e.string.str() << '\n';
  }
}

SampledPool read_pool_text(std::istream& is) {
  SampledPool pool;
  bool have_sites = false;
  std::string line;
  std::size_t line_no = 0;
  std::size_t total = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string tok;
      while (hs >> tok) {
        if (tok.rfind("n_sites=", 0) == 0) {
          pool.n_sites = std::stoul(tok.substr(8));
          have_sites = true;
        } else if (tok.rfind("n_samples=", 0) == 0) {
          pool.n_samples = std::stoul(tok.substr(10));
        }
      }
      continue;
    }
    std::istringstream ls(line);
    PoolEntry e;
    std::string prob;
    std::string str;
    std::string extra;
    if (!(ls >> e.multiplicity >> prob >> str) || (ls >> extra)) {
      throw ParseError(ErrorCode::MalformedLine, line_no, 1,
                       "expected '<multiplicity> <probability> <STRING>'");
    }
    try {
      e.probability = std::stod(prob);
    } catch (const std::exception&) {
      throw ParseError(ErrorCode::MalformedLine, line_no, 1, "bad probability '" + prob + "'");
    }
    e.string = PauliString::parse(str);
    if (!have_sites) {
      pool.n_sites = e.string.size();
      have_sites = true;
    }
    if (e.string.size() != pool.n_sites) {
      throw ParseError(ErrorCode::InconsistentLength, line_no, 1,
                       "string length differs from n_sites");
    }
    total += e.multiplicity;
    pool.entries.push_back(std::move(e));
  }
  if (pool.n_samples == 0) pool.n_samples = total;
  std::sort(pool.entries.begin(), pool.entries.end(),
            [](const PoolEntry& a, const PoolEntry& b) { return a.string < b.string; });
  return pool;
}

void write_polar_csv(std::ostream& os, const SampledPool& pool) {
  os << "string,class,multiplicity,probability,weight,radius,bitmask,theta,dot_size\n";
  const double n = static_cast<double>(std::max<std::size_t>(pool.n_sites, 1));
  for (const auto& e : pool.entries) {
    const bool diag = e.string.is_diagonal();
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < e.string.size() && i < 64; ++i) {
      const Pauli p = e.string[i];
      const bool hit = diag ? p == Pauli::Z : (p == Pauli::X || p == Pauli::Y);
      if (hit) mask |= std::uint64_t{1} << i;
    }
    const double weight = static_cast<double>(e.string.weight());
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(mask) / std::exp2(n);
    os << e.string.str() << ',' << (e.string.is_identity() ? "identity" : diag ? "IZ" : "XY")
       << ',' << e.multiplicity << ',' << format_coefficient(cplx{e.probability, 0.0}) << ','
       << e.string.weight() << ',' << format_coefficient(cplx{weight / n, 0.0}) << ',' << mask
       << ',' << format_coefficient(cplx{theta, 0.0}) << ','
       << format_coefficient(cplx{std::sqrt(e.probability), 0.0}) << '\n';
  }
}

}  // namespace cdmpo
