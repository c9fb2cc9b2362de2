// Copyright 2026 The fairnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Line-oriented instance files:
//
//   fairnet v1
//   vertices 4
//   edge 0 1
//   label 2 3
//   k 5
//   meta generator circulant
//   cert 1 2 4 3
//   cert_k 5
//
// Lines starting with '#' are comments. write_instance emits the canonical
// form (sorted edges and labels, metadata keys in order), so a read/write
// round trip is byte-identical.

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "fairnet/core.hpp"

namespace fairnet {

class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Instance {
  Graph graph;
  LabelMultiset labels;
  std::optional<Label> k;
  std::map<std::string, std::string> metadata;
  std::optional<FairnessCertificate> certificate;
  /// False when the file carried a certificate that does not verify.
  bool certificate_verified = true;

  friend bool operator==(const Instance&, const Instance&) = default;
};

Instance read_instance(std::string_view text);
std::string write_instance(const Instance& instance);

Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& instance);

}  // namespace fairnet
