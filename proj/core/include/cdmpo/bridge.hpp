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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cdmpo/pauli.hpp"

namespace cdmpo {

enum class Side { left, right };

/// Deduplicated half-strings on one side of the cut, sorted lexicographically.
struct FragmentDictionary {
  Side side = Side::left;
  std::size_t fragment_length = 0;
  std::vector<PauliString> fragments;
  std::unordered_map<PauliString, std::size_t, PauliStringHash> index_of;

  static FragmentDictionary build(Side side, std::size_t fragment_length,
                                  std::vector<PauliString> fragments);

  std::size_t size() const noexcept { return fragments.size(); }
  std::optional<std::size_t> find(const PauliString& fragment) const;
};

struct GraphEdge {
  std::size_t layer;  ///< edge runs from `layer` to `layer + 1`
  std::size_t from;
  std::size_t to;
  Pauli label;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Layered trie over fragment prefixes (left) or suffixes (right).
///
/// Left graph: layer i holds the distinct prefixes P[0:i], i = 0..M, so layer 0
/// is the empty string and layer M the left dictionary. An edge appends the
/// symbol at site i-1.
/// Right graph: layer i holds the distinct suffixes P[M+i:N], i = 0..N-M, so
/// layer 0 is the right dictionary and the last layer the empty string. An
/// edge strips the leading symbol.
struct SymbolicGraph {
  std::vector<std::vector<PauliString>> layers;
  std::vector<GraphEdge> edges;

  std::vector<std::size_t> layer_sizes() const;

  friend bool operator==(const SymbolicGraph&, const SymbolicGraph&) = default;
};

SymbolicGraph build_left_graph(const std::vector<PauliString>& left_fragments);
SymbolicGraph build_right_graph(const std::vector<PauliString>& right_fragments);

using BridgeKey = std::pair<std::size_t, std::size_t>;

/// Sparse coefficient matrix between left and right dictionary indices.
/// Entries whose value accumulated to zero stay present ("cancelled"), which
/// keeps them in the active edge set until pruned explicitly.
struct Bridge {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::map<BridgeKey, cplx> entries;

  std::size_t active_count() const noexcept { return entries.size(); }
  std::size_t cancelled_count() const noexcept;
  Matrix dense() const;
};

struct BridgeDecomposition {
  std::size_t n_sites = 0;
  std::size_t cut = 0;  ///< number of sites in the left block
  FragmentDictionary left;
  FragmentDictionary right;
  SymbolicGraph graph_l;
  SymbolicGraph graph_r;
  Bridge bridge;

  /// Hilbert-Schmidt norm 2^{M/2} of every left fragment (fragments are kept
  /// unnormalized; this is metadata only). Likewise 2^{(N-M)/2} on the right.
  double hs_norm_left() const;
  double hs_norm_right() const;

  /// SHA-256 over the dictionaries and both graphs. Independent of the bridge.
  std::string structural_hash() const;
  /// The Pauli string P_alpha^L (x) P_beta^R.
  PauliString product(BridgeKey key) const;
};

/// Splits every term at `cut` (default floor(N/2)), deduplicates the halves,
/// builds both graphs and accumulates coefficients into the bridge.
/// Throws CutOutOfRange or EmptyOperator.
BridgeDecomposition compile(const PauliSum& op, std::optional<std::size_t> cut = std::nullopt);

/// Expands sum C_ab (P_a^L (x) P_b^R) back into a PauliSum in bridge-key order.
PauliSum reconstruct(const BridgeDecomposition& d);

/// Replaces the bridge entries; dictionaries and graphs are untouched. Keys
/// may activate pairs outside the current edge set. Throws IndexOutOfRange.
BridgeDecomposition set_bridge(const BridgeDecomposition& d,
                               const std::map<BridgeKey, cplx>& coeffs);

/// Removes entries that are exactly zero.
BridgeDecomposition prune_zero_entries(const BridgeDecomposition& d);

/// JSON document:
///   {"format": "cdmpo-bridge", "version": 1, "n_sites", "cut",
///    "left_fragments": [str], "right_fragments": [str],
///    "bridge": [{"a", "b", "re", "im"}],           (sorted by (a, b))
///    "graph_stats": {"left_layer_sizes", "right_layer_sizes",
///                    "left_edges", "right_edges"},
///    "hs_norm_left", "hs_norm_right", "structural_hash"}
/// Graphs are rebuilt from the dictionaries on load.
std::string bridge_to_json(const BridgeDecomposition& d);
BridgeDecomposition bridge_from_json(std::string_view text);

}  // namespace cdmpo
