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

#include "cdmpo/pauli_io.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <optional>
#include <sstream>

#include "cdmpo/errors.hpp"

namespace cdmpo {
namespace {

constexpr std::string_view kSitesDirective = "# n_sites=";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Parses a signed real at the start of `text`; returns characters consumed.
std::optional<std::pair<double, std::size_t>> read_real(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) return std::nullopt;
  double value = 0.0;
  const char* first = text.data() + pos;
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
  if (ec != std::errc{} || ptr == first) return std::nullopt;
  return std::make_pair(negative ? -value : value, static_cast<std::size_t>(ptr - text.data()));
}

std::optional<cplx> try_parse_coefficient(std::string_view text) {
  const auto re = read_real(text);
  if (!re) return std::nullopt;
  const auto [a, used] = *re;
  std::string_view rest = text.substr(used);
  if (rest.empty()) return cplx{a, 0.0};
  if (rest == "i") return cplx{0.0, a};
  if (rest.front() != '+' && rest.front() != '-') return std::nullopt;
  if (rest.back() != 'i') return std::nullopt;
  const std::string_view imag = rest.substr(0, rest.size() - 1);
  const auto im = read_real(imag);
  if (!im || im->second != imag.size()) return std::nullopt;
  return cplx{a, im->first};
}

std::string format_real(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace

cplx parse_coefficient(std::string_view text) {
  const auto c = try_parse_coefficient(text);
  if (!c) {
    throw Error(ErrorCode::MalformedLine, "invalid coefficient '" + std::string(text) + "'");
  }
  return *c;
}

std::string format_coefficient(cplx c) {
  if (c.imag() == 0.0 && !std::signbit(c.imag())) return format_real(c.real());
  std::string im = format_real(c.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_real(c.real()) + im + "i";
}

PauliSum parse_pauli_sum(std::istream& in) {
  std::vector<PauliTerm> terms;
  std::optional<std::size_t> n_sites;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (line.starts_with(kSitesDirective)) {
      std::size_t declared = 0;
      const auto digits = line.substr(kSitesDirective.size());
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), declared);
      if (ec != std::errc{} || declared == 0) {
        throw ParseError(ErrorCode::MalformedLine, line_no, kSitesDirective.size() + 1,
                         "invalid n_sites directive");
      }
      (void)ptr;
      if (n_sites && *n_sites != declared) {
        throw ParseError(ErrorCode::InconsistentLength, line_no, 1,
                         "n_sites directive disagrees with earlier terms");
      }
      n_sites = declared;
      continue;
    }
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::size_t pos = 0;
    while (pos < line.size() && is_space(line[pos])) ++pos;
    if (pos == line.size()) continue;

    const std::size_t coeff_begin = pos;
    while (pos < line.size() && !is_space(line[pos])) ++pos;
    const std::string_view coeff_text = line.substr(coeff_begin, pos - coeff_begin);
    const auto coeff = try_parse_coefficient(coeff_text);
    if (!coeff) {
      throw ParseError(ErrorCode::MalformedLine, line_no, coeff_begin + 1,
                       "invalid coefficient '" + std::string(coeff_text) + "'");
    }
    while (pos < line.size() && is_space(line[pos])) ++pos;
    if (pos == line.size()) {
      throw ParseError(ErrorCode::MalformedLine, line_no, pos + 1, "missing Pauli string");
    }
    const std::size_t str_begin = pos;
    while (pos < line.size() && !is_space(line[pos])) ++pos;
    const std::string_view str_text = line.substr(str_begin, pos - str_begin);
    for (std::size_t k = 0; k < str_text.size(); ++k) {
      if (!pauli_from_char(str_text[k])) {
        throw ParseError(ErrorCode::MalformedLine, line_no, str_begin + k + 1,
                         "invalid Pauli symbol '" + std::string(1, str_text[k]) + "'");
      }
    }
    while (pos < line.size() && is_space(line[pos])) ++pos;
    if (pos != line.size()) {
      throw ParseError(ErrorCode::MalformedLine, line_no, pos + 1, "trailing characters");
    }
    if (!n_sites) {
      n_sites = str_text.size();
    } else if (*n_sites != str_text.size()) {
      throw ParseError(ErrorCode::InconsistentLength, line_no, str_begin + 1,
                       "string has " + std::to_string(str_text.size()) +
                           " sites, expected " + std::to_string(*n_sites));
    }
    terms.push_back({*coeff, PauliString::parse(str_text)});
  }
  if (!n_sites) {
    throw ParseError(ErrorCode::EmptyInput, line_no == 0 ? 1 : line_no, 1,
                     "no terms in input");
  }
  return PauliSum(*n_sites, std::move(terms));
}

PauliSum parse_pauli_sum(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_pauli_sum(in);
}

std::string format_pauli_sum(const PauliSum& op) {
  std::string out;
  if (op.empty()) {
    return "# n_sites=" + std::to_string(op.n_sites()) + "\n";
  }
  for (const auto& t : op.terms()) {
    out += format_coefficient(t.coeff);
    out += ' ';
    out += t.string.str();
    out += '\n';
  }
  return out;
}

}  // namespace cdmpo
