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

#include "json_reader.h"

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <memory>
#include <utility>

namespace proxyline::cli {
namespace {

// Forward reader over the text that publishes how far the parser has read.
class CountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator(const char* at, std::size_t* consumed, const char* base)
      : at_(at), consumed_(consumed), base_(base) {}

  reference operator*() const { return *at_; }
  CountingIterator& operator++() {
    ++at_;
    *consumed_ = static_cast<std::size_t>(at_ - base_);
    return *this;
  }
  CountingIterator operator++(int) {
    CountingIterator old = *this;
    ++*this;
    return old;
  }
  bool operator==(const CountingIterator& other) const { return at_ == other.at_; }
  bool operator!=(const CountingIterator& other) const { return at_ != other.at_; }

 private:
  const char* at_;
  std::size_t* consumed_;
  const char* base_;
};

std::string EscapePointerToken(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

class LineRecorder : public nlohmann::json_sax<Json> {
 public:
  LineRecorder(const std::vector<std::size_t>& line_starts, const std::size_t* consumed,
               std::map<std::string, std::size_t>& out)
      : line_starts_(line_starts), consumed_(consumed), out_(out) {}

  bool null() override { return Value(); }
  bool boolean(bool) override { return Value(); }
  bool number_integer(number_integer_t) override { return Value(); }
  bool number_unsigned(number_unsigned_t) override { return Value(); }
  bool number_float(number_float_t, const string_t&) override { return Value(); }
  bool string(string_t&) override { return Value(); }
  bool binary(binary_t&) override { return Value(); }
  bool start_object(std::size_t) override {
    Value();
    frames_.push_back({false, 0, Current()});
    return true;
  }
  bool key(string_t& k) override {
    pending_ = frames_.back().pointer + "/" + EscapePointerToken(k);
    out_.emplace(pending_, Line());
    return true;
  }
  bool end_object() override {
    frames_.pop_back();
    return true;
  }
  bool start_array(std::size_t) override {
    Value();
    frames_.push_back({true, 0, Current()});
    return true;
  }
  bool end_array() override {
    frames_.pop_back();
    return true;
  }
  bool parse_error(std::size_t, const std::string&,
                   const nlohmann::detail::exception&) override {
    return false;
  }

 private:
  struct Frame {
    bool array;
    std::size_t index;
    std::string pointer;
  };

  // Pointer of the value that is about to start.
  std::string Current() const { return frames_.empty() ? "" : pending_; }

  bool Value() {
    if (!frames_.empty() && frames_.back().array) {
      pending_ = frames_.back().pointer + "/" + std::to_string(frames_.back().index++);
      out_.emplace(pending_, Line());
    }
    return true;
  }

  std::size_t Line() const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(),
                               *consumed_ == 0 ? 0 : *consumed_ - 1);
    return static_cast<std::size_t>(it - line_starts_.begin());
  }

  const std::vector<std::size_t>& line_starts_;
  const std::size_t* consumed_;
  std::map<std::string, std::size_t>& out_;
  std::vector<Frame> frames_;
  std::string pending_;
};

std::string TypeName(const Json& v) { return v.type_name(); }

}  // namespace

SourceMap SourceMap::Build(const std::string& text) {
  std::vector<std::size_t> starts{0};
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') starts.push_back(i + 1);
  }
  SourceMap map;
  std::size_t consumed = 0;
  LineRecorder recorder(starts, &consumed, map.lines_);
  const char* base = text.data();
  Json::sax_parse(CountingIterator(base, &consumed, base),
                  CountingIterator(base + text.size(), &consumed, base), &recorder);
  map.lines_.emplace("", 1);
  return map;
}

std::size_t SourceMap::LineOf(const std::string& pointer) const {
  // Missing keys report the line of the nearest existing parent.
  std::string p = pointer;
  while (true) {
    auto it = lines_.find(p);
    if (it != lines_.end()) return it->second;
    auto slash = p.rfind('/');
    if (slash == std::string::npos) return 0;
    p.resize(slash);
  }
}

Document Document::Parse(const std::string& text, const std::string& origin) {
  Document doc{origin, {}, {}};
  try {
    doc.root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    auto colon = what.find("syntax error");
    throw SchemaError(origin, "", line,
                      "column " + std::to_string(column) + ": " +
                          (colon == std::string::npos ? what : what.substr(colon)));
  }
  doc.source = SourceMap::Build(text);
  return doc;
}

void Document::Fail(const std::string& pointer, const std::string& message) const {
  throw SchemaError(origin, pointer, source.LineOf(pointer), message);
}

ObjectReader::ObjectReader(const Document& doc, const Json& value, std::string pointer)
    : doc_(doc), value_(value), pointer_(std::move(pointer)) {
  if (!value_.is_object()) doc_.Fail(pointer_, "expected an object, got " + TypeName(value_));
}

bool ObjectReader::Has(const std::string& key) const { return value_.contains(key); }

const Json& ObjectReader::Get(const std::string& key) {
  seen_.insert(key);
  auto it = value_.find(key);
  if (it == value_.end()) doc_.Fail(PointerTo(key), "missing required field");
  return *it;
}

double ObjectReader::Number(const std::string& key) {
  const Json& v = Get(key);
  if (!v.is_number()) doc_.Fail(PointerTo(key), "expected a number, got " + TypeName(v));
  return v.get<double>();
}

double ObjectReader::Number(const std::string& key, double fallback) {
  if (!Has(key)) {
    seen_.insert(key);
    return fallback;
  }
  return Number(key);
}

std::uint64_t ObjectReader::Count(const std::string& key, std::uint64_t fallback) {
  if (!Has(key)) {
    seen_.insert(key);
    return fallback;
  }
  const Json& v = Get(key);
  if (!v.is_number_unsigned()) {
    doc_.Fail(PointerTo(key), "expected a non-negative integer, got " + v.dump());
  }
  return v.get<std::uint64_t>();
}

long long ObjectReader::Integer(const std::string& key, long long fallback) {
  if (!Has(key)) {
    seen_.insert(key);
    return fallback;
  }
  const Json& v = Get(key);
  if (!v.is_number_integer()) doc_.Fail(PointerTo(key), "expected an integer, got " + v.dump());
  return v.get<long long>();
}

bool ObjectReader::Boolean(const std::string& key, bool fallback) {
  if (!Has(key)) {
    seen_.insert(key);
    return fallback;
  }
  const Json& v = Get(key);
  if (!v.is_boolean()) doc_.Fail(PointerTo(key), "expected true or false, got " + TypeName(v));
  return v.get<bool>();
}

std::string ObjectReader::String(const std::string& key) {
  const Json& v = Get(key);
  if (!v.is_string()) doc_.Fail(PointerTo(key), "expected a string, got " + TypeName(v));
  return v.get<std::string>();
}

std::string ObjectReader::String(const std::string& key, const std::string& fallback) {
  if (!Has(key)) {
    seen_.insert(key);
    return fallback;
  }
  return String(key);
}

std::vector<double> ObjectReader::Numbers(const std::string& key) {
  return ReadNumbers(doc_, Get(key), PointerTo(key));
}

void ObjectReader::Finish() const {
  for (auto it = value_.begin(); it != value_.end(); ++it) {
    if (!seen_.contains(it.key())) {
      doc_.Fail(PointerTo(EscapePointerToken(it.key())), "unknown field \"" + it.key() + "\"");
    }
  }
}

std::vector<double> ReadNumbers(const Document& doc, const Json& value,
                                const std::string& pointer) {
  if (!value.is_array()) doc.Fail(pointer, "expected an array of numbers, got " + TypeName(value));
  std::vector<double> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_number()) {
      doc.Fail(pointer + "/" + std::to_string(i), "expected a number, got " + TypeName(value[i]));
    }
    out.push_back(value[i].get<double>());
  }
  return out;
}

}  // namespace proxyline::cli
