// Copyright 2026 The UserSim Authors
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

// JSON schema checks shared by the readers. Errors carry JSON pointers.
#ifndef USERSIM_SRC_JSON_UTIL_H_
#define USERSIM_SRC_JSON_UTIL_H_

#include <string>
#include <string_view>

#include "usersim/corpus.h"
#include "usersim/error.h"

namespace usersim {

inline std::string EscapePointerToken(std::string_view key) {
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

inline std::string Child(const std::string& pointer, std::string_view key) {
  return pointer + "/" + EscapePointerToken(key);
}

inline std::string Child(const std::string& pointer, size_t index) {
  return pointer + "/" + std::to_string(index);
}

[[noreturn]] inline void SchemaFail(const std::string& pointer, const std::string& what) {
  throw Error(ErrorKind::kSchema, (pointer.empty() ? std::string("/") : pointer) + ": " + what);
}

inline const Json& RequireField(const Json& obj, std::string_view key, const std::string& pointer) {
  if (!obj.is_object()) SchemaFail(pointer, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) SchemaFail(Child(pointer, key), "missing field");
  return *it;
}

inline std::string RequireString(const Json& j, const std::string& pointer) {
  if (!j.is_string()) SchemaFail(pointer, "expected a string");
  return j.get<std::string>();
}

inline std::string StringField(const Json& obj, std::string_view key, const std::string& pointer) {
  return RequireString(RequireField(obj, key, pointer), Child(pointer, key));
}

inline const Json& RequireArray(const Json& j, const std::string& pointer) {
  if (!j.is_array()) SchemaFail(pointer, "expected an array");
  return j;
}

inline const Json& RequireObject(const Json& j, const std::string& pointer) {
  if (!j.is_object()) SchemaFail(pointer, "expected an object");
  return j;
}

}  // namespace usersim

#endif  // USERSIM_SRC_JSON_UTIL_H_
