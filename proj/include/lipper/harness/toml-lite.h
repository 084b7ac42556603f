// lipper/harness/toml-lite.h

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

#ifndef LIPPER_HARNESS_TOML_LITE_H_
#define LIPPER_HARNESS_TOML_LITE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace lipper {

/// The TOML subset used by manifests and config files: [table] headers,
/// bare keys, basic strings, integers, floats, booleans and one-line arrays
/// of those.  Comments start with '#'.
struct TomlValue {
  enum class Kind { kBool, kInt, kFloat, kString, kArray };
  Kind kind = Kind::kInt;
  bool b = false;
  int64_t i = 0;
  double f = 0.0;
  std::string s;
  std::vector<TomlValue> array;

  /// Accessors throw FormatError on a kind mismatch; AsDouble accepts ints.
  bool AsBool() const;
  int64_t AsInt() const;
  double AsDouble() const;
  const std::string &AsString() const;
  std::vector<int> AsIntArray() const;
};

class TomlDocument {
 public:
  static TomlDocument Parse(std::istream &is);
  static TomlDocument ParseFile(const std::filesystem::path &path);

  /// Keys are "table.key" (or "key" before any header).
  bool Has(const std::string &key) const { return values_.count(key) > 0; }
  const TomlValue &Get(const std::string &key) const;
  const std::map<std::string, TomlValue> &values() const { return values_; }

 private:
  std::map<std::string, TomlValue> values_;
};

/// Shortest text that parses back to the same double.
std::string TomlDouble(double v);

}  // namespace lipper

#endif  // LIPPER_HARNESS_TOML_LITE_H_
