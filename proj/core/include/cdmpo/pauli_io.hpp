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

#include <iosfwd>
#include <string>
#include <string_view>

#include "cdmpo/pauli.hpp"

namespace cdmpo {

/// Reads the Pauli-sum text format.
///
/// Grammar (one term per line, UTF-8, LF or CRLF line endings):
///
///     line    := ws* [ coeff ws+ string ws* ] [ '#' comment ]
///     coeff   := real | real ('+'|'-') ureal 'i' | real 'i'
///     real    := ['+'|'-'] ureal        (decimal or exponent notation)
///     string  := ('I'|'X'|'Y'|'Z')+     (same length on every line)
///
/// A line starting with `# n_sites=<N>` declares the site count, which lets an
/// empty sum round-trip. Duplicate strings are merged, exact zeros dropped, and the first
/// occurrence fixes the term order. Throws ParseError with codes
/// MalformedLine, InconsistentLength or EmptyInput.
PauliSum parse_pauli_sum(std::istream& in);
PauliSum parse_pauli_sum(std::string_view text);

/// Parses a single coefficient literal; throws Error(MalformedLine).
cplx parse_coefficient(std::string_view text);

/// Shortest representation that reads back to the identical double(s).
std::string format_coefficient(cplx c);

/// Inverse of parse_pauli_sum: one `<coeff> <STRING>` line per term.
/// An empty sum serializes as a single `# n_sites=<N>` comment line.
std::string format_pauli_sum(const PauliSum& op);

}  // namespace cdmpo
