// Copyright 2026 The Proxyline Authors
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

// Schema-checked access to a parsed JSON document. Every lookup is tracked
// so that leftover keys can be reported as unknown fields.

#ifndef PROXYLINE_SRC_CLI_JSON_READER_H_
#define PROXYLINE_SRC_CLI_JSON_READER_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "proxyline/cli/scenario_file.h"

namespace proxyline::cli {

using Json = nlohmann::json;

// JSON pointer -> line of the key or array element that introduces it.
class SourceMap {
 public:
  static SourceMap Build(const std::string& text);
  std::size_t LineOf(const std::string& pointer) const;

 private:
  std::map<std::string, std::size_t> lines_;
};

struct Document {
  std::string origin;
  SourceMap source;
  Json root;

  // Throws SchemaError with line and column on a syntax error.
  static Document Parse(const std::string& text, const std::string& origin);

  [[noreturn]] void Fail(const std::string& pointer, const std::string& message) const;
};

class ObjectReader {
 public:
  ObjectReader(const Document& doc, const Json& value, std::string pointer);

  bool Has(const std::string& key) const;
  const Json& Get(const std::string& key);  // required
  std::string PointerTo(const std::string& key) const { return pointer_ + "/" + key; }

  double Number(const std::string& key);
  double Number(const std::string& key, double fallback);
  std::uint64_t Count(const std::string& key, std::uint64_t fallback);
  long long Integer(const std::string& key, long long fallback);
  bool Boolean(const std::string& key, bool fallback);
  std::string String(const std::string& key);
  std::string String(const std::string& key, const std::string& fallback);
  std::vector<double> Numbers(const std::string& key);

  // Rejects every key that was never looked up.
  void Finish() const;

  const Document& doc() const { return doc_; }
  const std::string& pointer() const { return pointer_; }

 private:
  const Document& doc_;
  const Json& value_;
  std::string pointer_;
  std::set<std::string> seen_;
};

// Array of numbers at `pointer`; infinities are not representable in JSON.
std::vector<double> ReadNumbers(const Document& doc, const Json& value,
                                const std::string& pointer);

}  // namespace proxyline::cli

#endif  // PROXYLINE_SRC_CLI_JSON_READER_H_
