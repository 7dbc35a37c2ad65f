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

#include <bit>
#include <cstdint>
#include <cstring>
#include <json.hpp>

#include "cdmpo/digest.hpp"
#include "cdmpo/errors.hpp"
#include "cdmpo/mpo.hpp"
#include "cdmpo/mps.hpp"

namespace cdmpo {
namespace {

void put_double(std::vector<std::uint8_t>& out, double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

double get_double(const std::uint8_t* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

std::string encode_payload(const std::vector<const std::vector<cplx>*>& blocks) {
  std::vector<std::uint8_t> bytes;
  for (const auto* block : blocks) {
    for (const cplx& z : *block) {
      put_double(bytes, z.real());
      put_double(bytes, z.imag());
    }
  }
  return base64_encode(bytes);
}

struct Header {
  std::size_t n_sites = 0;
  std::vector<std::size_t> bond_dims;
  std::vector<Gauge> gauge;
  std::vector<std::uint8_t> payload;
  nlohmann::json doc;
};

Header read_header(std::string_view text, std::string_view format, std::size_t legs) {
  Header h;
  h.doc = nlohmann::json::parse(text);
  if (h.doc.value("format", std::string{}) != format) {
    throw Error(ErrorCode::MalformedFile, "not a " + std::string(format) + " document");
  }
  if (h.doc.value("version", 0) != 1) {
    throw Error(ErrorCode::MalformedFile, "unsupported version");
  }
  h.n_sites = h.doc.at("n_sites").get<std::size_t>();
  h.bond_dims = h.doc.at("bond_dims").get<std::vector<std::size_t>>();
  for (const auto& g : h.doc.at("gauge")) h.gauge.push_back(gauge_from_string(g.get<std::string>()));
  const auto phys = h.doc.at("physical_dims").get<std::vector<std::size_t>>();
  if (phys != std::vector<std::size_t>(legs, 2)) {
    throw Error(ErrorCode::MalformedFile, "physical dimensions must all be 2");
  }
  if (h.n_sites == 0 || h.bond_dims.size() != h.n_sites + 1 || h.gauge.size() != h.n_sites) {
    throw Error(ErrorCode::DimensionError, "bond or gauge list length disagrees with n_sites");
  }
  h.payload = base64_decode(h.doc.at("payload").get<std::string>());
  std::size_t expected = 0;
  for (std::size_t j = 0; j < h.n_sites; ++j) {
    expected += h.bond_dims[j] * h.bond_dims[j + 1] * (std::size_t{1} << legs);
  }
  if (h.payload.size() != expected * 16) {
    throw Error(ErrorCode::DimensionError, "payload size does not match bond dimensions");
  }
  return h;
}

void fill(std::vector<cplx>& data, const std::uint8_t*& p) {
  for (cplx& z : data) {
    z = cplx{get_double(p), get_double(p + 8)};
    p += 16;
  }
}

template <typename Chain>
nlohmann::ordered_json header_json(const Chain& c, std::string_view format, std::size_t legs) {
  nlohmann::ordered_json doc;
  doc["format"] = format;
  doc["version"] = 1;
  doc["n_sites"] = c.n_sites();
  doc["bond_dims"] = c.bond_dims();
  std::vector<std::string> tags;
  for (Gauge g : c.gauge) tags.emplace_back(to_string(g));
  doc["gauge"] = tags;
  doc["physical_dims"] = std::vector<std::size_t>(legs, 2);
  return doc;
}

}  // namespace

std::string mpo_to_json(const Mpo& m) {
  m.validate();
  auto doc = header_json(m, "cdmpo-mpo", 2);
  std::vector<const std::vector<cplx>*> blocks;
  for (const auto& w : m.tensors) blocks.push_back(&w.data());
  doc["payload"] = encode_payload(blocks);
  return doc.dump(2) + "\n";
}

Mpo mpo_from_json(std::string_view text) {
  try {
    const Header h = read_header(text, "cdmpo-mpo", 2);
    Mpo m;
    m.gauge = h.gauge;
    const std::uint8_t* p = h.payload.data();
    for (std::size_t j = 0; j < h.n_sites; ++j) {
      MpoTensor w(h.bond_dims[j], h.bond_dims[j + 1]);
      fill(w.data(), p);
      m.tensors.push_back(std::move(w));
    }
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, e.what());
  }
}

std::string mps_to_json(const Mps& m) {
  m.validate();
  auto doc = header_json(m, "cdmpo-mps", 1);
  doc["normalized"] = m.normalized;
  std::vector<const std::vector<cplx>*> blocks;
  for (const auto& a : m.tensors) blocks.push_back(&a.data());
  doc["payload"] = encode_payload(blocks);
  return doc.dump(2) + "\n";
}

Mps mps_from_json(std::string_view text) {
  try {
    const Header h = read_header(text, "cdmpo-mps", 1);
    Mps m;
    m.gauge = h.gauge;
    m.normalized = h.doc.value("normalized", false);
    const std::uint8_t* p = h.payload.data();
    for (std::size_t j = 0; j < h.n_sites; ++j) {
      MpsTensor a(h.bond_dims[j], h.bond_dims[j + 1]);
      fill(a.data(), p);
      m.tensors.push_back(std::move(a));
    }
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, e.what());
  }
}

}  // namespace cdmpo
