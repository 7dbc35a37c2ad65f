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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdmpo/bridge.hpp"
#include "cdmpo/linalg.hpp"
#include "cdmpo/mps.hpp"
#include "cdmpo/pauli.hpp"
#include "cdmpo/sampler.hpp"

namespace cdmpo {

/// Computational basis state |b_0 b_1 ... b_{N-1}>, b_i = 1 meaning occupied.
struct BasisState {
  std::vector<bool> bits;

  /// Accepts a string over {0,1}; throws BadReference otherwise.
  static BasisState parse(std::string_view text);
  std::size_t size() const noexcept { return bits.size(); }
  std::string str() const;
  Vector dense() const;
  /// <b|P|b>: zero unless P is diagonal, else (-1)^{#Z on occupied sites}.
  double diagonal_sign(const PauliString& p) const;
};

struct EffectivePencil {
  Matrix h_eff;
  Matrix n_eff;
  std::vector<PauliString> basis;  ///< phi_j = P_j |Phi_0>
  std::vector<BridgeKey> bridge_pairs;  ///< set when built from a bridge span

  std::size_t dim() const noexcept { return basis.size(); }
};

enum class AssemblyPath { algebraic, dense };

/// (H_eff)_jk = <Phi_0|P_j h P_k|Phi_0>, (N_eff)_jk = <Phi_0|P_j P_k|Phi_0>.
/// Throws EmptyInput, DuplicatePoolString, BadReference or LengthMismatch.
EffectivePencil assemble_pencil(const PauliSum& h, const std::vector<PauliString>& pool,
                                const BasisState& reference,
                                AssemblyPath path = AssemblyPath::algebraic);

/// The span of every pair P_a^L (x) P_b^R of the bridge dictionaries,
/// flattened as j = a * |I_R| + b.
EffectivePencil assemble_bridge_pencil(const PauliSum& h, const BridgeDecomposition& d,
                                       const BasisState& reference);

struct RitzSolution {
  double energy = 0.0;
  Vector coefficients;  ///< normalized so that x^dagger N_eff x = 1
  double residual_norm = 0.0;
  double regularization = 0.0;
  std::size_t retained_dim = 0;  ///< pencil dimension kept after dropping N_eff null directions
  bool converged = true;
  bool degenerate = false;
  std::size_t iterations = 0;
};

struct RitzOptions {
  /// Shift added to N_eff. Unset: 1e-10 trace(N_eff) / d.
  std::optional<double> reg;
  /// N_eff eigenvalues at or below drop_tol * max are discarded before the
  /// reduced eigenproblem. With reg = 0 and drop_tol = 0 a singular N_eff
  /// raises SingularPencil.
  double drop_tol = 1e-9;
};

RitzSolution solve_ritz_dense(const EffectivePencil& p, const RitzOptions& opts = {});

struct LobpcgOptions {
  std::size_t block = 4;
  double tol = 1e-10;
  std::size_t max_iter = 500;
  std::uint64_t seed = 1;
  std::optional<double> reg;
};

using BlockOperator = std::function<Matrix(const Matrix&)>;

struct LobpcgResult {
  RealVector values;
  Matrix vectors;
  RealVector residual_norms;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Smallest `block` eigenpairs of A x = lambda B x (B Hermitian positive
/// definite) from matrix-vector actions only. Convergence is tested on the
/// lowest pair: ||r|| <= tol (a_norm + |lambda| b_norm).
LobpcgResult lobpcg_smallest(const BlockOperator& apply_a, const BlockOperator& apply_b,
                             std::size_t dim, double a_norm, double b_norm,
                             const LobpcgOptions& opts);

/// LOBPCG on (H_eff, N_eff + reg I). A non-converged run returns the best
/// iterate with `converged` false.
RitzSolution solve_ritz_lobpcg(const EffectivePencil& p, const LobpcgOptions& opts = {});

/// b_j = <phi_j|target>.
Vector target_overlaps(const EffectivePencil& p, const BasisState& reference,
                       const Vector& target);

/// Solves (N_eff + eta I) x = b. Throws SingularSystem when eta = 0 and N_eff
/// is singular, DimensionMismatch on size disagreement.
Vector fidelity_fit(const EffectivePencil& p, const Vector& b, double eta);

struct SweepRow {
  std::size_t n_samples = 0;
  std::size_t p_pool = 0;
  double energy = 0.0;
  double reference_energy = 0.0;
  bool fallback = false;  ///< empty pool: energy is <Phi_0|h|Phi_0>
};

/// Draws max(grid) samples once; the pool at each grid point is the union of
/// every earlier pool with curate(first n samples, keep_iz), so pools are
/// nested. reference_energy is <mps|h|mps>.
std::vector<SweepRow> energy_vs_samples_sweep(const PauliSum& h, const Mps& reference_mps,
                                              const std::vector<std::size_t>& grid,
                                              const SamplerConfig& cfg, const BasisState& phi0);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Bridge over the dictionaries of `d` whose entry for the pair splitting
/// basis[j] is x_j. Entries of `d` not named by `basis` become zero, so the
/// support stays that of `d`. Throws SupportChanged when a basis string does
/// not split into fragments of `d`, DimensionMismatch on size disagreement.
BridgeDecomposition coefficients_to_bridge(const BridgeDecomposition& d,
                                           const std::vector<PauliString>& basis,
                                           const Vector& x);

/// Debug dump; throws TooLarge above 64 basis states.
std::string pencil_to_json(const EffectivePencil& p);

}  // namespace cdmpo
