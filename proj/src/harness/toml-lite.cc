// harness/toml-lite.cc

// Copyright 2026  The Lipper Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "lipper/harness/toml-lite.h"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>

#include "lipper/base/error.h"

namespace lipper {

namespace {

const char *KindName(TomlValue::Kind k) {
  switch (k) {
    case TomlValue::Kind::kBool: return "boolean";
    case TomlValue::Kind::kInt: return "integer";
    case TomlValue::Kind::kFloat: return "float";
    case TomlValue::Kind::kString: return "string";
    case TomlValue::Kind::kArray: return "array";
  }
  return "?";
}

[[noreturn]] void Mismatch(const TomlValue &v, const char *want) {
  throw FormatError(std::string("expected ") + want + ", found " + KindName(v.kind));
}

class LineParser {
 public:
  LineParser(const std::string &text, int line) : t_(text), line_(line) {}

  [[noreturn]] void Fail(const std::string &msg) const {
    throw FormatError("line " + std::to_string(line_) + ": " + msg);
  }
  void SkipBlank() {
    while (p_ < t_.size() && (t_[p_] == ' ' || t_[p_] == '\t')) p_++;
  }
  bool AtEnd() {
    SkipBlank();
    return p_ >= t_.size() || t_[p_] == '#';
  }
  char Peek() const { return p_ < t_.size() ? t_[p_] : '\0'; }
  void Expect(char c) {
    SkipBlank();
    if (Peek() != c) Fail(std::string("expected '") + c + "'");
    p_++;
  }
  std::string Key() {
    SkipBlank();
    size_t b = p_;
    while (p_ < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[p_])) || t_[p_] == '_' ||
                              t_[p_] == '-' || t_[p_] == '.'))
      p_++;
    if (b == p_) Fail("expected a key");
    return t_.substr(b, p_ - b);
  }
  TomlValue Value() {
    SkipBlank();
    TomlValue v;
    char c = Peek();
    if (c == '"') {
      v.kind = TomlValue::Kind::kString;
      p_++;
      while (true) {
        if (p_ >= t_.size()) Fail("unterminated string");
        char ch = t_[p_++];
        if (ch == '"') break;
        if (ch == '\\') {
          if (p_ >= t_.size()) Fail("unterminated string");
          char e = t_[p_++];
          switch (e) {
            case 'n': v.s += '\n'; break;
            case 't': v.s += '\t'; break;
            case '"': v.s += '"'; break;
            case '\\': v.s += '\\'; break;
            default: Fail(std::string("unsupported escape \\") + e);
          }
        } else {
          v.s += ch;
        }
      }
      return v;
    }
    if (c == '[') {
      v.kind = TomlValue::Kind::kArray;
      p_++;
      SkipBlank();
      if (Peek() == ']') {
        p_++;
        return v;
      }
      while (true) {
        v.array.push_back(Value());
        SkipBlank();
        if (Peek() == ',') {
          p_++;
          SkipBlank();
          if (Peek() == ']') {
            p_++;
            return v;
          }
          continue;
        }
        Expect(']');
        return v;
      }
    }
    size_t b = p_;
    while (p_ < t_.size() && t_[p_] != ',' && t_[p_] != ']' && t_[p_] != ' ' && t_[p_] != '\t' &&
           t_[p_] != '#')
      p_++;
    std::string tok = t_.substr(b, p_ - b);
    if (tok == "true" || tok == "false") {
      v.kind = TomlValue::Kind::kBool;
      v.b = tok == "true";
      return v;
    }
    std::string clean;
    for (char ch : tok)
      if (ch != '_') clean += ch;
    if (clean.empty()) Fail("expected a value");
    const char *first = clean.data() + (clean[0] == '+' ? 1 : 0);
    const char *last = clean.data() + clean.size();
    bool is_float = clean.find_first_of(".eE") != std::string::npos || clean == "inf" ||
                    clean == "nan" || clean == "+inf" || clean == "-inf";
    if (!is_float) {
      auto [ptr, ec] = std::from_chars(first, last, v.i);
      if (ec == std::errc() && ptr == last) return v;
      Fail("bad integer '" + tok + "'");
    }
    v.kind = TomlValue::Kind::kFloat;
    auto [ptr, ec] = std::from_chars(first, last, v.f);
    if (ec != std::errc() || ptr != last) Fail("bad number '" + tok + "'");
    return v;
  }

 private:
  const std::string &t_;
  int line_;
  size_t p_ = 0;
};

}  // namespace

bool TomlValue::AsBool() const {
  if (kind != Kind::kBool) Mismatch(*this, "boolean");
  return b;
}

int64_t TomlValue::AsInt() const {
  if (kind != Kind::kInt) Mismatch(*this, "integer");
  return i;
}

double TomlValue::AsDouble() const {
  if (kind == Kind::kInt) return static_cast<double>(i);
  if (kind != Kind::kFloat) Mismatch(*this, "number");
  return f;
}

const std::string &TomlValue::AsString() const {
  if (kind != Kind::kString) Mismatch(*this, "string");
  return s;
}

std::vector<int> TomlValue::AsIntArray() const {
  if (kind != Kind::kArray) Mismatch(*this, "array");
  std::vector<int> out;
  for (const TomlValue &v : array) out.push_back(static_cast<int>(v.AsInt()));
  return out;
}

TomlDocument TomlDocument::Parse(std::istream &is) {
  TomlDocument doc;
  std::string line, table;
  int line_no = 0;
  while (std::getline(is, line)) {
    line_no++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    LineParser p(line, line_no);
    if (p.AtEnd()) continue;
    if (p.Peek() == '[') {
      p.Expect('[');
      table = p.Key();
      p.Expect(']');
      if (!p.AtEnd()) p.Fail("trailing text after table header");
      continue;
    }
    std::string key = p.Key();
    p.Expect('=');
    TomlValue v = p.Value();
    if (!p.AtEnd()) p.Fail("trailing text after value");
    std::string full = table.empty() ? key : table + "." + key;
    if (!doc.values_.emplace(full, std::move(v)).second) p.Fail("duplicate key " + full);
  }
  return doc;
}

TomlDocument TomlDocument::ParseFile(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot read " + path.string());
  try {
    return Parse(is);
  } catch (const FormatError &e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

const TomlValue &TomlDocument::Get(const std::string &key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw FormatError("missing key " + key);
  return it->second;
}

std::string TomlDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

}  // namespace lipper
