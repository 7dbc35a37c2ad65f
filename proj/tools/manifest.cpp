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

#include "manifest.hpp"

#include <fstream>
#include <json.hpp>

#include "cdmpo/digest.hpp"
#include "cdmpo/errors.hpp"

namespace cdmpo::cli {

void Manifest::input(const std::string& path, const std::string& bytes) {
  inputs_.emplace_back(path, sha256_hex(bytes));
}

void Manifest::output(const std::string& path) { outputs_.push_back(path); }

void Manifest::parameter(const std::string& key, const std::string& value) {
  parameters_[key] = value;
}

void Manifest::write() const {
  nlohmann::ordered_json doc;
  doc["format"] = "cdmpo-manifest";
  doc["version"] = 1;
  doc["tool_version"] = CDMPO_VERSION;
  doc["command"] = command_;
  auto inputs = nlohmann::ordered_json::array();
  for (const auto& [path, digest] : inputs_) inputs.push_back({{"path", path}, {"sha256", digest}});
  doc["inputs"] = std::move(inputs);
  doc["outputs"] = outputs_;
  doc["parameters"] = parameters_;
  const std::string text = doc.dump(2) + "\n";
  for (const auto& path : outputs_) {
    std::ofstream os(path + ".manifest.json", std::ios::binary);
    if (!os) throw Error(ErrorCode::MalformedFile, "cannot write " + path + ".manifest.json");
    os << text;
  }
}

}  // namespace cdmpo::cli
