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

#include <json.hpp>
#include <sstream>

#include "cdmpo/errors.hpp"
#include "cdmpo/lcu.hpp"
#include "cdmpo/pauli_io.hpp"

namespace cdmpo {
namespace {

std::string real_text(double x) { return format_coefficient(cplx{x, 0.0}); }

double parse_real(std::string_view s, std::size_t line) {
  try {
    const cplx c = parse_coefficient(s);
    if (c.imag() != 0.0) throw Error(ErrorCode::MalformedLine, "expected a real number");
    return c.real();
  } catch (const Error&) {
    throw ParseError(ErrorCode::MalformedLine, line, 1, "bad number '" + std::string(s) + "'");
  }
}

std::size_t parse_count(std::string_view s, std::size_t line) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(std::string(s), &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ParseError(ErrorCode::MalformedLine, line, 1, "bad integer '" + std::string(s) + "'");
  }
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::pair<std::string, std::string> key_value(std::string_view tok, std::size_t line) {
  const auto eq = tok.find('=');
  if (eq == std::string_view::npos) {
    throw ParseError(ErrorCode::MalformedLine, line, 1, "expected key=value, got '" +
                                                            std::string(tok) + "'");
  }
  return {std::string(tok.substr(0, eq)), std::string(tok.substr(eq + 1))};
}

std::string bits(std::size_t value, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t i = 0; i < width; ++i) {
    if ((value >> (width - 1 - i)) & 1U) s[i] = '1';
  }
  return s;
}

}  // namespace

std::string emit_gates(const LcuProgram& prog) {
  std::ostringstream os;
  os << "# cdmpo-gates v1\n";
  os << "# n_sites=" << prog.n_sites << " cut=" << prog.cut << " lambda=" << real_text(prog.lambda)
     << " n_left=" << prog.n_left << " n_right=" << prog.n_right << " a_left=" << prog.a_left
     << " a_right=" << prog.a_right << '\n';
  auto join = [](const std::vector<PauliString>& v) {
    std::string s;
    for (const auto& f : v) s += (s.empty() ? "" : ",") + f.str();
    return s;
  };
  os << "# left_fragments=" << join(prog.left_fragments) << '\n';
  os << "# right_fragments=" << join(prog.right_fragments) << '\n';
  os << "# select_hash=" << prog.select_hash << '\n';
  os << "prep";
  for (const auto& p : prog.prep) os << ' ' << p.a << ',' << p.b << ':' << real_text(p.amplitude);
  os << '\n';
  for (const auto& row : prog.select) {
    os << "select ctrl=" << bits(prog.index_of(row.a, row.b), prog.ancillas())
       << " target=" << row.left.str() << row.right.str() << " pair=" << row.a << ',' << row.b;
    if (row.phase != cplx{1.0, 0.0}) {
      os << " phase=" << real_text(row.phase.real()) << ',' << real_text(row.phase.imag());
    }
    os << '\n';
  }
  os << "prep_dg\n";
  return os.str();
}

LcuProgram parse_gates(std::string_view text) {
  LcuProgram prog;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool saw_version = false;
  bool saw_prep = false;
  bool saw_end = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line.front() == '#' ? line.substr(1) : line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (line.front() == '#') {
      if (toks[0] == "cdmpo-gates") {
        if (toks.size() != 2 || toks[1] != "v1") {
          throw ParseError(ErrorCode::MalformedFile, line_no, 1, "unsupported gate listing version");
        }
        saw_version = true;
        continue;
      }
      for (const auto& t : toks) {
        const auto [k, v] = key_value(t, line_no);
        if (k == "n_sites") prog.n_sites = parse_count(v, line_no);
        else if (k == "cut") prog.cut = parse_count(v, line_no);
        else if (k == "lambda") prog.lambda = parse_real(v, line_no);
        else if (k == "n_left") prog.n_left = parse_count(v, line_no);
        else if (k == "n_right") prog.n_right = parse_count(v, line_no);
        else if (k == "a_left") prog.a_left = parse_count(v, line_no);
        else if (k == "a_right") prog.a_right = parse_count(v, line_no);
        else if (k == "select_hash") prog.select_hash = v;
        else if (k == "left_fragments" || k == "right_fragments") {
          auto& dst = k == "left_fragments" ? prog.left_fragments : prog.right_fragments;
          for (const auto& f : split(v, ',')) dst.push_back(PauliString::parse(f));
        }
      }
      continue;
    }
    if (saw_end) throw ParseError(ErrorCode::MalformedFile, line_no, 1, "content after prep_dg");
    if (toks[0] == "prep") {
      saw_prep = true;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto colon = toks[i].find(':');
        const auto comma = toks[i].find(',');
        if (colon == std::string::npos || comma == std::string::npos || comma > colon) {
          throw ParseError(ErrorCode::MalformedLine, line_no, 1, "expected a,b:amp");
        }
        prog.prep.push_back({parse_count(toks[i].substr(0, comma), line_no),
                             parse_count(toks[i].substr(comma + 1, colon - comma - 1), line_no),
                             parse_real(toks[i].substr(colon + 1), line_no)});
      }
    } else if (toks[0] == "select") {
      SelectRow row;
      std::string ctrl;
      std::string target;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto [k, v] = key_value(toks[i], line_no);
        if (k == "ctrl") {
          ctrl = v;
        } else if (k == "target") {
          target = v;
        } else if (k == "pair") {
          const auto parts = split(v, ',');
          if (parts.size() != 2) throw ParseError(ErrorCode::MalformedLine, line_no, 1, "bad pair");
          row.a = parse_count(parts[0], line_no);
          row.b = parse_count(parts[1], line_no);
        } else if (k == "phase") {
          const auto parts = split(v, ',');
          if (parts.size() != 2) throw ParseError(ErrorCode::MalformedLine, line_no, 1, "bad phase");
          row.phase = {parse_real(parts[0], line_no), parse_real(parts[1], line_no)};
        } else {
          throw ParseError(ErrorCode::MalformedLine, line_no, 1, "unknown select field " + k);
        }
      }
      const PauliString t = PauliString::parse(target);
      if (t.size() != prog.n_sites || ctrl != bits(prog.index_of(row.a, row.b), prog.ancillas())) {
        throw ParseError(ErrorCode::MalformedLine, line_no, 1, "select row disagrees with header");
      }
      row.left = t.slice(0, prog.cut);
      row.right = t.slice(prog.cut, prog.n_sites);
      prog.select.push_back(std::move(row));
    } else if (toks[0] == "prep_dg") {
      saw_end = true;
    } else {
      throw ParseError(ErrorCode::MalformedLine, line_no, 1, "unknown instruction " + toks[0]);
    }
  }
  if (!saw_version || !saw_prep || !saw_end) {
    throw Error(ErrorCode::MalformedFile, "gate listing needs a version header, prep and prep_dg");
  }
  if (prog.left_fragments.size() != prog.n_left || prog.right_fragments.size() != prog.n_right) {
    throw Error(ErrorCode::MalformedFile, "fragment lists disagree with n_left / n_right");
  }
  return prog;
}

std::string lcu_to_json(const LcuProgram& prog) {
  nlohmann::ordered_json doc;
  doc["format"] = "cdmpo-lcu";
  doc["version"] = 1;
  doc["n_sites"] = prog.n_sites;
  doc["cut"] = prog.cut;
  doc["lambda"] = prog.lambda;
  doc["n_left"] = prog.n_left;
  doc["n_right"] = prog.n_right;
  doc["a_left"] = prog.a_left;
  doc["a_right"] = prog.a_right;
  auto strings = [](const std::vector<PauliString>& v) {
    std::vector<std::string> out;
    for (const auto& f : v) out.push_back(f.str());
    return out;
  };
  doc["left_fragments"] = strings(prog.left_fragments);
  doc["right_fragments"] = strings(prog.right_fragments);
  auto prep = nlohmann::ordered_json::array();
  for (const auto& p : prog.prep) prep.push_back({{"a", p.a}, {"b", p.b}, {"amp", p.amplitude}});
  doc["prep"] = std::move(prep);
  auto select = nlohmann::ordered_json::array();
  for (const auto& r : prog.select) {
    select.push_back({{"a", r.a},
                      {"b", r.b},
                      {"pl", r.left.str()},
                      {"pr", r.right.str()},
                      {"phase_re", r.phase.real()},
                      {"phase_im", r.phase.imag()}});
  }
  doc["select"] = std::move(select);
  doc["select_hash"] = prog.select_hash;
  return doc.dump(2) + "\n";
}

LcuProgram lcu_from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    if (doc.value("format", std::string{}) != "cdmpo-lcu" || doc.value("version", 0) != 1) {
      throw Error(ErrorCode::MalformedFile, "not a cdmpo-lcu v1 document");
    }
    LcuProgram prog;
    prog.n_sites = doc.at("n_sites").get<std::size_t>();
    prog.cut = doc.at("cut").get<std::size_t>();
    prog.lambda = doc.at("lambda").get<double>();
    prog.n_left = doc.at("n_left").get<std::size_t>();
    prog.n_right = doc.at("n_right").get<std::size_t>();
    prog.a_left = doc.at("a_left").get<std::size_t>();
    prog.a_right = doc.at("a_right").get<std::size_t>();
    for (const auto& s : doc.at("left_fragments"))
      prog.left_fragments.push_back(PauliString::parse(s.get<std::string>()));
    for (const auto& s : doc.at("right_fragments"))
      prog.right_fragments.push_back(PauliString::parse(s.get<std::string>()));
    for (const auto& p : doc.at("prep")) {
      prog.prep.push_back({p.at("a").get<std::size_t>(), p.at("b").get<std::size_t>(),
                           p.at("amp").get<double>()});
    }
    for (const auto& r : doc.at("select")) {
      prog.select.push_back({r.at("a").get<std::size_t>(), r.at("b").get<std::size_t>(),
                             PauliString::parse(r.at("pl").get<std::string>()),
                             PauliString::parse(r.at("pr").get<std::string>()),
                             cplx{r.at("phase_re").get<double>(), r.at("phase_im").get<double>()}});
    }
    prog.select_hash = doc.at("select_hash").get<std::string>();
    return prog;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, e.what());
  }
}

}  // namespace cdmpo
