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

#include "cdmpo/pauli.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <unordered_map>

#include "cdmpo/errors.hpp"

namespace cdmpo {
namespace {

constexpr std::uint64_t kLowBits = 0x5555555555555555ULL;

std::size_t word_count(std::size_t n_sites) {
  return (n_sites + PauliString::kSitesPerWord - 1) / PauliString::kSitesPerWord;
}

struct SiteMasks {
  std::uint64_t x, y, z;  // one bit per site, in the low bit of each pair
};

SiteMasks site_masks(std::uint64_t w) {
  const std::uint64_t h = (w >> 1) & kLowBits;
  const std::uint64_t l = w & kLowBits;
  return {~h & l & kLowBits, h & ~l & kLowBits, h & l};
}

// Bit (n-1-j) of x/z marks an X-type / Z-type factor on site j.
struct DenseMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  unsigned n_y = 0;
};

DenseMasks dense_masks(const PauliString& p) {
  DenseMasks m;
  const std::size_t n = p.size();
  for (std::size_t j = 0; j < n; ++j) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - j);
    switch (p[j]) {
      case Pauli::I: break;
      case Pauli::X: m.x |= bit; break;
      case Pauli::Y: m.x |= bit; m.z |= bit; ++m.n_y; break;
      case Pauli::Z: m.z |= bit; break;
    }
  }
  return m;
}

void check_dense_limit(std::size_t n, std::size_t dense_limit) {
  if (n > dense_limit) {
    throw Error(ErrorCode::TooLarge, std::to_string(n) +
                                         " sites exceed the dense limit of " +
                                         std::to_string(dense_limit));
  }
}

}  // namespace

char to_char(Pauli p) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<unsigned>(p)];
}

std::optional<Pauli> pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: return std::nullopt;
  }
}

Eigen::Matrix2cd pauli_matrix(Pauli p) {
  Eigen::Matrix2cd m;
  const cplx i{0.0, 1.0};
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

PauliString::PauliString(std::size_t n_sites)
    : n_sites_(n_sites), words_(word_count(n_sites), 0) {}

PauliString PauliString::parse(std::string_view text) {
  PauliString p(text.size());
  for (std::size_t j = 0; j < text.size(); ++j) {
    const auto sym = pauli_from_char(text[j]);
    if (!sym) {
      throw Error(ErrorCode::MalformedLine,
                  "invalid Pauli symbol '" + std::string(1, text[j]) + "'");
    }
    p.set(j, *sym);
  }
  return p;
}

PauliString PauliString::from_symbols(std::span<const Pauli> symbols) {
  PauliString p(symbols.size());
  for (std::size_t j = 0; j < symbols.size(); ++j) p.set(j, symbols[j]);
  return p;
}

void PauliString::set(std::size_t site, Pauli p) noexcept {
  std::uint64_t& word = words_[site / kSitesPerWord];
  const unsigned s = shift(site);
  word = (word & ~(std::uint64_t{3} << s)) |
         (static_cast<std::uint64_t>(p) << s);
}

std::size_t PauliString::weight() const noexcept {
  std::size_t w = 0;
  for (std::uint64_t word : words_) {
    w += static_cast<std::size_t>(std::popcount((word | (word >> 1)) & kLowBits));
  }
  return w;
}

bool PauliString::is_diagonal() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) {
    return ((w ^ (w >> 1)) & kLowBits) == 0;
  });
}

bool PauliString::is_identity() const noexcept {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

PauliString PauliString::slice(std::size_t begin, std::size_t end) const {
  PauliString out(end - begin);
  for (std::size_t j = begin; j < end; ++j) out.set(j - begin, (*this)[j]);
  return out;
}

PauliString PauliString::concat(const PauliString& right) const {
  PauliString out(n_sites_ + right.n_sites_);
  std::copy(words_.begin(), words_.end(), out.words_.begin());
  for (std::size_t j = 0; j < right.n_sites_; ++j) out.set(n_sites_ + j, right[j]);
  return out;
}

std::string PauliString::str() const {
  std::string s(n_sites_, 'I');
  for (std::size_t j = 0; j < n_sites_; ++j) s[j] = to_char((*this)[j]);
  return s;
}

std::size_t PauliString::hash() const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ n_sites_;
  for (std::uint64_t w : words_) {
    h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) noexcept {
  const std::size_t n = std::min(a.words_.size(), b.words_.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (a.words_[k] != b.words_[k]) return a.words_[k] <=> b.words_[k];
  }
  if (a.words_.size() != b.words_.size()) {
    // A longer string with nonzero tail words sorts after its prefix.
    return a.words_.size() <=> b.words_.size();
  }
  return a.n_sites_ <=> b.n_sites_;
}

std::ostream& operator<<(std::ostream& os, const PauliString& p) { return os << p.str(); }

cplx Phase::value() const noexcept {
  switch (k & 3U) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PauliProduct pauli_product(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "cannot multiply strings of length " + std::to_string(a.size()) +
                    " and " + std::to_string(b.size()));
  }
  PauliProduct out{Phase{}, PauliString(a.size())};
  unsigned k = 0;
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    const SiteMasks ma = site_masks(a.words_[w]);
    const SiteMasks mb = site_masks(b.words_[w]);
    // XY = iZ, YZ = iX, ZX = iY; reversed orders give -i.
    const std::uint64_t pos = (ma.x & mb.y) | (ma.y & mb.z) | (ma.z & mb.x);
    const std::uint64_t neg = (ma.y & mb.x) | (ma.z & mb.y) | (ma.x & mb.z);
    k += static_cast<unsigned>(std::popcount(pos)) +
         3U * static_cast<unsigned>(std::popcount(neg));
    // In the I=00, X=01, Y=10, Z=11 code the product symbol is the XOR.
    out.result.words_[w] = a.words_[w] ^ b.words_[w];
  }
  out.phase.k = static_cast<std::uint8_t>(k & 3U);
  return out;
}

PauliClass classify(const PauliString& p) noexcept {
  return p.is_diagonal() ? PauliClass::diagonal : PauliClass::offdiagonal;
}

PauliSum::PauliSum(std::size_t n_sites, std::vector<PauliTerm> terms) : n_sites_(n_sites) {
  std::unordered_map<PauliString, std::size_t, PauliStringHash> index;
  index.reserve(terms.size());
  std::vector<PauliTerm> merged;
  merged.reserve(terms.size());
  for (auto& term : terms) {
    if (term.string.size() != n_sites_) {
      throw Error(ErrorCode::LengthMismatch,
                  "term " + term.string.str() + " does not have " +
                      std::to_string(n_sites_) + " sites");
    }
    auto [it, inserted] = index.try_emplace(term.string, merged.size());
    if (inserted) {
      merged.push_back(std::move(term));
    } else {
      merged[it->second].coeff += term.coeff;
    }
  }
  std::erase_if(merged, [](const PauliTerm& t) { return t.coeff == cplx{}; });
  terms_ = std::move(merged);
}

cplx PauliSum::coefficient(const PauliString& p) const {
  for (const auto& t : terms_) {
    if (t.string == p) return t.coeff;
  }
  return {};
}

PauliSum PauliSum::pruned(double tol) const {
  std::vector<PauliTerm> kept;
  for (const auto& t : terms_) {
    if (std::abs(t.coeff) > tol) kept.push_back(t);
  }
  return PauliSum(n_sites_, std::move(kept));
}

PauliSum PauliSum::sorted() const {
  PauliSum out = *this;
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.string < b.string; });
  return out;
}

double PauliSum::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

PauliSum operator+(const PauliSum& a, const PauliSum& b) {
  if (a.n_sites() != b.n_sites()) {
    throw Error(ErrorCode::LengthMismatch, "cannot add sums on different site counts");
  }
  std::vector<PauliTerm> terms(a.terms().begin(), a.terms().end());
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return PauliSum(a.n_sites(), std::move(terms));
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_sites() != b.n_sites()) {
    throw Error(ErrorCode::LengthMismatch, "cannot multiply sums on different site counts");
  }
  std::vector<PauliTerm> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      auto [phase, result] = pauli_product(ta.string, tb.string);
      terms.push_back({ta.coeff * tb.coeff * phase.value(), std::move(result)});
    }
  }
  return PauliSum(a.n_sites(), std::move(terms));
}

PauliSum operator*(cplx scale, const PauliSum& a) {
  std::vector<PauliTerm> terms(a.terms().begin(), a.terms().end());
  for (auto& t : terms) t.coeff *= scale;
  return PauliSum(a.n_sites(), std::move(terms));
}

PauliSum adjoint(const PauliSum& a) {
  std::vector<PauliTerm> terms(a.terms().begin(), a.terms().end());
  for (auto& t : terms) t.coeff = std::conj(t.coeff);
  return PauliSum(a.n_sites(), std::move(terms));
}

Matrix to_dense(const PauliString& p, std::size_t dense_limit) {
  check_dense_limit(p.size(), dense_limit);
  const std::size_t dim = std::size_t{1} << p.size();
  const DenseMasks m = dense_masks(p);
  const cplx base = Phase{static_cast<std::uint8_t>(m.n_y & 3U)}.value();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t c = 0; c < dim; ++c) {
    const double sign = (std::popcount(c & m.z) & 1) ? -1.0 : 1.0;
    out(static_cast<Eigen::Index>(c ^ m.x), static_cast<Eigen::Index>(c)) = sign * base;
  }
  return out;
}

Matrix to_dense(const PauliSum& op, std::size_t dense_limit) {
  check_dense_limit(op.n_sites(), dense_limit);
  const std::size_t dim = std::size_t{1} << op.n_sites();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : op.terms()) {
    const DenseMasks m = dense_masks(t.string);
    const cplx base = t.coeff * Phase{static_cast<std::uint8_t>(m.n_y & 3U)}.value();
    for (std::uint64_t c = 0; c < dim; ++c) {
      const double sign = (std::popcount(c & m.z) & 1) ? -1.0 : 1.0;
      out(static_cast<Eigen::Index>(c ^ m.x), static_cast<Eigen::Index>(c)) += sign * base;
    }
  }
  return out;
}

Vector apply(const PauliString& p, const Vector& state) {
  if (p.size() >= 63 || static_cast<std::size_t>(state.size()) != (std::size_t{1} << p.size())) {
    throw Error(ErrorCode::DimensionMismatch, "state dimension does not match 2^N");
  }
  const DenseMasks m = dense_masks(p);
  const cplx base = Phase{static_cast<std::uint8_t>(m.n_y & 3U)}.value();
  Vector out(state.size());
  for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(state.size()); ++c) {
    const double sign = (std::popcount(c & m.z) & 1) ? -1.0 : 1.0;
    out(static_cast<Eigen::Index>(c ^ m.x)) = sign * base * state(static_cast<Eigen::Index>(c));
  }
  return out;
}

Vector apply(const PauliSum& op, const Vector& state) {
  Vector out = Vector::Zero(state.size());
  for (const auto& t : op.terms()) out += t.coeff * apply(t.string, state);
  if (op.empty() && (op.n_sites() >= 63 ||
                     static_cast<std::size_t>(state.size()) != (std::size_t{1} << op.n_sites()))) {
    throw Error(ErrorCode::DimensionMismatch, "state dimension does not match 2^N");
  }
  return out;
}

cplx expectation(const PauliSum& op, const Vector& state) {
  if (op.n_sites() >= 63 ||
      static_cast<std::size_t>(state.size()) != (std::size_t{1} << op.n_sites())) {
    throw Error(ErrorCode::DimensionMismatch,
                "state of dimension " + std::to_string(state.size()) +
                    " does not match 2^" + std::to_string(op.n_sites()));
  }
  if (std::abs(state.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::NotNormalized, "state norm differs from 1 by more than 1e-12");
  }
  return state.dot(apply(op, state));
}

}  // namespace cdmpo
