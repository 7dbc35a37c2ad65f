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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cdmpo/linalg.hpp"
#include "cdmpo/mps.hpp"
#include "cdmpo/pauli.hpp"

namespace cdmpo {

struct SamplerConfig {
  std::size_t n_samples = 1;
  std::uint64_t seed = 0;
  std::size_t keep_iz = 0;
};

/// Counter-based generator: the stream of sample `index` depends only on
/// (seed, index), so samples can be drawn in any order or in parallel.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t index);
  std::uint64_t next_u64() noexcept;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;

 private:
  std::uint64_t state_;
};

struct PauliSample {
  PauliString string;
  double probability = 0.0;  ///< product of the recorded conditionals
};

enum class PoolTag { IZ, XY };
std::string_view to_string(PoolTag t);

struct PoolEntry {
  PauliString string;
  std::size_t multiplicity = 0;
  double probability = 0.0;
};

struct CuratedString {
  PauliString string;
  PoolTag tag = PoolTag::IZ;
};

struct SampledPool {
  std::size_t n_sites = 0;
  std::size_t n_samples = 0;
  std::vector<PoolEntry> entries;  ///< distinct strings, lexicographic
  std::vector<CuratedString> curated;  ///< U_IZ (by rank) then U_XY (lexicographic)

  std::size_t pool_size() const noexcept { return curated.size(); }
};

/// Unnormalized weights ||E_j(alpha)||_F^2 for alpha = I, X, Y, Z, where
/// E_j(alpha) = sum_{s,s'} (sigma_alpha)_{s s'} A^{s dagger} E A^{s'}.
std::array<double, 4> conditional_weights(const Matrix& env, const MpsTensor& a);

/// E_j(alpha) for the chosen symbol.
Matrix advance_environment(const Matrix& env, const MpsTensor& a, Pauli alpha);

/// Throws GaugeViolation unless every tensor is right-canonical to 1e-10, and
/// NotNormalized unless <psi|psi> = 1 to 1e-10.
void check_sampling_gauge(const Mps& m);

/// Samples with indices first_index .. first_index + count - 1.
std::vector<PauliSample> draw_samples(const Mps& m, std::size_t count, std::uint64_t seed,
                                      std::uint64_t first_index = 0);

/// Product of the exact conditionals along `p`; equals <P>^2 / 2^N.
double chain_rule_probability(const Mps& m, const PauliString& p);

/// Draws cfg.n_samples strings and aggregates them; `curated` is left empty.
SampledPool sample_strings(const Mps& m, const SamplerConfig& cfg);

/// Aggregates an explicit sample list.
SampledPool aggregate(std::size_t n_sites, const std::vector<PauliSample>& samples);

/// U_XY: every distinct sampled string with an X or Y. U_IZ: the keep_iz most
/// frequent distinct diagonal strings (ties broken lexicographically), the
/// identity excluded.
SampledPool curate(const SampledPool& pool, std::size_t keep_iz);

/// The curated strings as a PauliSum with unit coefficients.
PauliSum curated_operator(const SampledPool& pool);

/// "# n_sites=N n_samples=M" then "<multiplicity> <probability> <STRING>".
void write_pool_text(std::ostream& os, const SampledPool& pool);
SampledPool read_pool_text(std::istream& is);

/// One row per distinct string: radius w(P)/N, bitmask b(P) over {X,Y} for
/// off-diagonal and {Z} for diagonal strings (site i contributes 2^i),
/// theta = 2 pi b / 2^N, dot size sqrt(Pi(P)).
void write_polar_csv(std::ostream& os, const SampledPool& pool);

}  // namespace cdmpo
