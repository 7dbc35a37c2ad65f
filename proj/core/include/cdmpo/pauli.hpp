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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdmpo/linalg.hpp"

namespace cdmpo {

/// Single-site Pauli symbol. The numeric code is the 2-bit storage code and
/// also fixes the lexicographic order I < X < Y < Z.
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

struct PauliProduct;
class PauliString;

inline constexpr Pauli kAllPaulis[4] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};

char to_char(Pauli p);
std::optional<Pauli> pauli_from_char(char c);

/// Dense 2x2 matrix of a single-site Pauli.
Eigen::Matrix2cd pauli_matrix(Pauli p);

/// Tensor product of single-site Paulis, packed 2 bits per site.
///
/// Site 0 occupies the two most significant bits of word 0, so comparing the
/// word arrays lexicographically compares the strings lexicographically.
/// Unused trailing bits are always zero. A zero-length string is the empty
/// fragment used as the root of the symbolic graphs.
class PauliString {
 public:
  static constexpr std::size_t kSitesPerWord = 32;

  PauliString() = default;
  /// Identity string on `n_sites` sites.
  explicit PauliString(std::size_t n_sites);

  /// Parses a string over {I,X,Y,Z}; throws Error(MalformedLine) otherwise.
  static PauliString parse(std::string_view text);
  static PauliString from_symbols(std::span<const Pauli> symbols);

  std::size_t size() const noexcept { return n_sites_; }
  bool empty() const noexcept { return n_sites_ == 0; }

  Pauli operator[](std::size_t site) const noexcept {
    const std::uint64_t word = words_[site / kSitesPerWord];
    return static_cast<Pauli>((word >> shift(site)) & 3U);
  }
  void set(std::size_t site, Pauli p) noexcept;

  std::size_t weight() const noexcept;
  /// True when every symbol is I or Z.
  bool is_diagonal() const noexcept;
  bool is_identity() const noexcept;

  /// Sites [begin, end).
  PauliString slice(std::size_t begin, std::size_t end) const;
  /// Tensor product `*this` (left) with `right`.
  PauliString concat(const PauliString& right) const;

  std::string str() const;
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::size_t hash() const noexcept;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend std::strong_ordering operator<=>(const PauliString& a,
                                          const PauliString& b) noexcept;

 private:
  friend PauliProduct pauli_product(const PauliString&, const PauliString&);

  static constexpr unsigned shift(std::size_t site) noexcept {
    return static_cast<unsigned>(62 - 2 * (site % kSitesPerWord));
  }

  std::size_t n_sites_ = 0;
  std::vector<std::uint64_t> words_;
};

std::ostream& operator<<(std::ostream& os, const PauliString& p);

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const noexcept { return p.hash(); }
};

/// Power of i: the value is i^k.
struct Phase {
  std::uint8_t k = 0;

  cplx value() const noexcept;
  friend Phase operator*(Phase a, Phase b) noexcept {
    return Phase{static_cast<std::uint8_t>((a.k + b.k) & 3U)};
  }
  friend bool operator==(Phase, Phase) = default;
};

struct PauliProduct {
  Phase phase;
  PauliString result;
};

/// a * b = phase * result. Throws Error(LengthMismatch).
PauliProduct pauli_product(const PauliString& a, const PauliString& b);

enum class PauliClass { diagonal, offdiagonal };
PauliClass classify(const PauliString& p) noexcept;

struct PauliTerm {
  cplx coeff;
  PauliString string;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/// Weighted sum of distinct Pauli strings on a common number of sites.
///
/// Construction merges duplicate strings by adding coefficients (keeping the
/// position of the first occurrence) and drops terms whose merged coefficient
/// is exactly zero.
class PauliSum {
 public:
  explicit PauliSum(std::size_t n_sites = 0) : n_sites_(n_sites) {}
  PauliSum(std::size_t n_sites, std::vector<PauliTerm> terms);

  std::size_t n_sites() const noexcept { return n_sites_; }
  std::span<const PauliTerm> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Coefficient of `p`, zero when absent.
  cplx coefficient(const PauliString& p) const;

  /// Drops terms with |coeff| <= tol.
  PauliSum pruned(double tol) const;
  /// Terms sorted by string; useful for order-insensitive comparison.
  PauliSum sorted() const;
  double l1_norm() const noexcept;

  friend bool operator==(const PauliSum&, const PauliSum&) = default;

 private:
  std::size_t n_sites_;
  std::vector<PauliTerm> terms_;
};

PauliSum operator+(const PauliSum& a, const PauliSum& b);
PauliSum operator*(const PauliSum& a, const PauliSum& b);
PauliSum operator*(cplx scale, const PauliSum& a);
/// Hermitian adjoint (Pauli strings are Hermitian, so coefficients conjugate).
PauliSum adjoint(const PauliSum& a);

// ---------------------------------------------------------------------------
// Dense oracles. Kronecker ordering: site 0 is the most significant qubit of
// the 2^N-dimensional computational basis index.

Matrix to_dense(const PauliString& p, std::size_t dense_limit = kDefaultDenseLimit);
Matrix to_dense(const PauliSum& op, std::size_t dense_limit = kDefaultDenseLimit);

/// P|state>, without forming the matrix.
Vector apply(const PauliString& p, const Vector& state);
Vector apply(const PauliSum& op, const Vector& state);

/// <state|op|state>. Throws DimensionMismatch or NotNormalized (1e-12).
cplx expectation(const PauliSum& op, const Vector& state);

}  // namespace cdmpo

template <>
struct std::hash<cdmpo::PauliString> {
  std::size_t operator()(const cdmpo::PauliString& p) const noexcept { return p.hash(); }
};
