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

#include "cdmpo/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <set>

#include "cdmpo/digest.hpp"
#include "cdmpo/errors.hpp"

namespace cdmpo {
namespace {

std::vector<PauliString> sorted_unique(std::vector<PauliString> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::size_t index_in(const std::vector<PauliString>& sorted, const PauliString& p) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
  return static_cast<std::size_t>(it - sorted.begin());
}

void append_graph(std::string& bytes, const SymbolicGraph& g) {
  for (const auto& layer : g.layers) {
    bytes += "layer";
    for (const auto& v : layer) {
      bytes += ' ';
      bytes += v.str();
    }
    bytes += '\n';
  }
  for (const auto& e : g.edges) {
    bytes += "edge " + std::to_string(e.layer) + ' ' + std::to_string(e.from) + ' ' +
             std::to_string(e.to) + ' ' + to_char(e.label) + '\n';
  }
}

}  // namespace

FragmentDictionary FragmentDictionary::build(Side side, std::size_t fragment_length,
                                             std::vector<PauliString> fragments) {
  FragmentDictionary d;
  d.side = side;
  d.fragment_length = fragment_length;
  d.fragments = std::move(fragments);
  d.index_of.reserve(d.fragments.size());
  for (std::size_t k = 0; k < d.fragments.size(); ++k) {
    if (d.fragments[k].size() != fragment_length) {
      throw Error(ErrorCode::LengthMismatch, "fragment " + d.fragments[k].str() +
                                                 " does not have length " +
                                                 std::to_string(fragment_length));
    }
    if (k > 0 && !(d.fragments[k - 1] < d.fragments[k])) {
      throw Error(ErrorCode::MalformedFile, "fragments must be distinct and sorted");
    }
    d.index_of.emplace(d.fragments[k], k);
  }
  return d;
}

std::optional<std::size_t> FragmentDictionary::find(const PauliString& fragment) const {
  const auto it = index_of.find(fragment);
  if (it == index_of.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> SymbolicGraph::layer_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(layers.size());
  for (const auto& layer : layers) sizes.push_back(layer.size());
  return sizes;
}

SymbolicGraph build_left_graph(const std::vector<PauliString>& left_fragments) {
  SymbolicGraph g;
  const std::size_t m = left_fragments.empty() ? 0 : left_fragments.front().size();
  g.layers.resize(m + 1);
  g.layers[0] = {PauliString(0)};
  for (std::size_t i = 1; i <= m; ++i) {
    std::vector<PauliString> prefixes;
    prefixes.reserve(left_fragments.size());
    for (const auto& f : left_fragments) prefixes.push_back(f.slice(0, i));
    g.layers[i] = sorted_unique(std::move(prefixes));
    for (std::size_t to = 0; to < g.layers[i].size(); ++to) {
      const PauliString& v = g.layers[i][to];
      const std::size_t from = index_in(g.layers[i - 1], v.slice(0, i - 1));
      g.edges.push_back({i - 1, from, to, v[i - 1]});
    }
  }
  return g;
}

SymbolicGraph build_right_graph(const std::vector<PauliString>& right_fragments) {
  SymbolicGraph g;
  const std::size_t len = right_fragments.empty() ? 0 : right_fragments.front().size();
  g.layers.resize(len + 1);
  g.layers[0] = sorted_unique(right_fragments);
  for (std::size_t i = 1; i <= len; ++i) {
    std::vector<PauliString> suffixes;
    suffixes.reserve(g.layers[i - 1].size());
    for (const auto& f : g.layers[i - 1]) suffixes.push_back(f.slice(1, f.size()));
    g.layers[i] = sorted_unique(std::move(suffixes));
    for (std::size_t from = 0; from < g.layers[i - 1].size(); ++from) {
      const PauliString& v = g.layers[i - 1][from];
      const std::size_t to = index_in(g.layers[i], v.slice(1, v.size()));
      g.edges.push_back({i - 1, from, to, v[0]});
    }
  }
  return g;
}

std::size_t Bridge::cancelled_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(), [](const auto& kv) { return kv.second == cplx{}; }));
}

Matrix Bridge::dense() const {
  Matrix c = Matrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (const auto& [key, value] : entries) {
    c(static_cast<Eigen::Index>(key.first), static_cast<Eigen::Index>(key.second)) = value;
  }
  return c;
}

double BridgeDecomposition::hs_norm_left() const {
  return std::pow(2.0, 0.5 * static_cast<double>(cut));
}

double BridgeDecomposition::hs_norm_right() const {
  return std::pow(2.0, 0.5 * static_cast<double>(n_sites - cut));
}

std::string BridgeDecomposition::structural_hash() const {
  std::string bytes = "cdmpo-structure-v1\n";
  bytes += "n_sites " + std::to_string(n_sites) + "\ncut " + std::to_string(cut) + "\n";
  bytes += "left";
  for (const auto& f : left.fragments) bytes += ' ' + f.str();
  bytes += "\nright";
  for (const auto& f : right.fragments) bytes += ' ' + f.str();
  bytes += '\n';
  append_graph(bytes, graph_l);
  append_graph(bytes, graph_r);
  return sha256_hex(bytes);
}

PauliString BridgeDecomposition::product(BridgeKey key) const {
  return left.fragments.at(key.first).concat(right.fragments.at(key.second));
}

BridgeDecomposition compile(const PauliSum& op, std::optional<std::size_t> cut) {
  const std::size_t n = op.n_sites();
  const std::size_t m = cut.value_or(n / 2);
  if (m < 1 || m + 1 > n) {
    throw Error(ErrorCode::CutOutOfRange, "cut " + std::to_string(m) +
                                              " outside [1, " +
                                              std::to_string(n == 0 ? 0 : n - 1) + "]");
  }
  if (op.empty()) throw Error(ErrorCode::EmptyOperator, "operator has no terms");

  std::vector<PauliString> lefts;
  std::vector<PauliString> rights;
  lefts.reserve(op.size());
  rights.reserve(op.size());
  for (const auto& t : op.terms()) {
    lefts.push_back(t.string.slice(0, m));
    rights.push_back(t.string.slice(m, n));
  }

  BridgeDecomposition d;
  d.n_sites = n;
  d.cut = m;
  d.left = FragmentDictionary::build(Side::left, m, sorted_unique(lefts));
  d.right = FragmentDictionary::build(Side::right, n - m, sorted_unique(rights));
  d.graph_l = build_left_graph(d.left.fragments);
  d.graph_r = build_right_graph(d.right.fragments);
  d.bridge.rows = d.left.size();
  d.bridge.cols = d.right.size();
  for (std::size_t k = 0; k < op.size(); ++k) {
    const BridgeKey key{d.left.index_of.at(lefts[k]), d.right.index_of.at(rights[k])};
    d.bridge.entries[key] += op.terms()[k].coeff;
  }
  return d;
}

PauliSum reconstruct(const BridgeDecomposition& d) {
  std::vector<PauliTerm> terms;
  terms.reserve(d.bridge.entries.size());
  for (const auto& [key, value] : d.bridge.entries) {
    terms.push_back({value, d.product(key)});
  }
  return PauliSum(d.n_sites, std::move(terms));
}

BridgeDecomposition set_bridge(const BridgeDecomposition& d,
                               const std::map<BridgeKey, cplx>& coeffs) {
  for (const auto& [key, value] : coeffs) {
    if (key.first >= d.bridge.rows || key.second >= d.bridge.cols) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "bridge key (" + std::to_string(key.first) + ", " +
                      std::to_string(key.second) + ") outside " +
                      std::to_string(d.bridge.rows) + "x" + std::to_string(d.bridge.cols));
    }
  }
  BridgeDecomposition out = d;
  out.bridge.entries = coeffs;
  return out;
}

BridgeDecomposition prune_zero_entries(const BridgeDecomposition& d) {
  BridgeDecomposition out = d;
  std::erase_if(out.bridge.entries, [](const auto& kv) { return kv.second == cplx{}; });
  return out;
}

std::string bridge_to_json(const BridgeDecomposition& d) {
  nlohmann::ordered_json doc;
  doc["format"] = "cdmpo-bridge";
  doc["version"] = 1;
  doc["n_sites"] = d.n_sites;
  doc["cut"] = d.cut;
  auto strings = [](const FragmentDictionary& dict) {
    std::vector<std::string> out;
    for (const auto& f : dict.fragments) out.push_back(f.str());
    return out;
  };
  doc["left_fragments"] = strings(d.left);
  doc["right_fragments"] = strings(d.right);
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [key, value] : d.bridge.entries) {
    entries.push_back({{"a", key.first}, {"b", key.second}, {"re", value.real()}, {"im", value.imag()}});
  }
  doc["bridge"] = std::move(entries);
  doc["graph_stats"] = {{"left_layer_sizes", d.graph_l.layer_sizes()},
                        {"right_layer_sizes", d.graph_r.layer_sizes()},
                        {"left_edges", d.graph_l.edges.size()},
                        {"right_edges", d.graph_r.edges.size()}};
  doc["hs_norm_left"] = d.hs_norm_left();
  doc["hs_norm_right"] = d.hs_norm_right();
  doc["structural_hash"] = d.structural_hash();
  return doc.dump(2) + "\n";
}

BridgeDecomposition bridge_from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    if (doc.value("format", std::string{}) != "cdmpo-bridge") {
      throw Error(ErrorCode::MalformedFile, "not a cdmpo-bridge document");
    }
    BridgeDecomposition d;
    d.n_sites = doc.at("n_sites").get<std::size_t>();
    d.cut = doc.at("cut").get<std::size_t>();
    if (d.cut < 1 || d.cut + 1 > d.n_sites) {
      throw Error(ErrorCode::CutOutOfRange, "cut outside [1, N-1]");
    }
    auto fragments = [](const nlohmann::json& arr) {
      std::vector<PauliString> out;
      for (const auto& s : arr) out.push_back(PauliString::parse(s.get<std::string>()));
      return out;
    };
    d.left = FragmentDictionary::build(Side::left, d.cut, fragments(doc.at("left_fragments")));
    d.right = FragmentDictionary::build(Side::right, d.n_sites - d.cut,
                                        fragments(doc.at("right_fragments")));
    d.graph_l = build_left_graph(d.left.fragments);
    d.graph_r = build_right_graph(d.right.fragments);
    d.bridge.rows = d.left.size();
    d.bridge.cols = d.right.size();
    std::map<BridgeKey, cplx> entries;
    for (const auto& e : doc.at("bridge")) {
      entries[{e.at("a").get<std::size_t>(), e.at("b").get<std::size_t>()}] =
          cplx{e.at("re").get<double>(), e.at("im").get<double>()};
    }
    return set_bridge(d, entries);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, e.what());
  }
}

}  // namespace cdmpo
