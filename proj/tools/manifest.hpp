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

#include <map>
#include <string>
#include <vector>

namespace cdmpo::cli {

/// Record of one command run, written as `<output>.manifest.json`. It holds no
/// timestamps, so identical runs produce identical manifests.
class Manifest {
 public:
  explicit Manifest(std::string command) : command_(std::move(command)) {}

  /// Records the SHA-256 of an input file's bytes.
  void input(const std::string& path, const std::string& bytes);
  void output(const std::string& path);
  void parameter(const std::string& key, const std::string& value);

  /// Writes the manifest next to every recorded output.
  void write() const;

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::string> outputs_;
  std::map<std::string, std::string> parameters_;
};

}  // namespace cdmpo::cli
