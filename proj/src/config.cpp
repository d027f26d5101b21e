// Copyright (c) the levelset authors
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

#include "levelset/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "levelset/error.hpp"

namespace levelset {
namespace {

enum class Kind { kNumber, kInt, kUnsigned, kBool, kString, kIntList, kPairList };

using SectionSchema = std::map<std::string, Kind>;

const std::map<std::string, SectionSchema>& Schema() {
  static const std::map<std::string, SectionSchema> schema = {
      {"inputs", {{"points", Kind::kString}, {"coefficients", Kind::kString}}},
      {"support", {{"lambda", Kind::kIntList}, {"gamma", Kind::kIntList}}},
      {"kernel", {{"type", Kind::kString}, {"sigma", Kind::kNumber}, {"periodized", Kind::kBool}}},
      {"rank", {{"tol", Kind::kNumber}}},
      {"grid", {{"resolution", Kind::kInt}}},
      {"irls",
       {{"lambda", Kind::kNumber},
        {"sigma", Kind::kNumber},
        {"gamma0", Kind::kNumber},
        {"gamma_decay", Kind::kNumber},
        {"gamma_min", Kind::kNumber},
        {"max_iters", Kind::kInt},
        {"conv_tol", Kind::kNumber},
        {"clamp_weights", Kind::kBool}}},
      {"curve",
       {{"k", Kind::kIntList},
        {"count", Kind::kInt},
        {"grid_resolution", Kind::kInt},
        {"noise", Kind::kNumber}}},
      {"sweep",
       {{"ks", Kind::kIntList},
        {"n_min", Kind::kInt},
        {"n_max", Kind::kInt},
        {"n_step", Kind::kInt},
        {"trials", Kind::kInt},
        {"threshold", Kind::kNumber},
        {"grid_resolution", Kind::kInt}}},
      {"bounds",
       {{"k1", Kind::kInt},
        {"k2", Kind::kInt},
        {"factors", Kind::kInt},
        {"factor_bandwidths", Kind::kPairList},
        {"l1", Kind::kInt},
        {"l2", Kind::kInt}}},
  };
  return schema;
}

const SectionSchema& TopLevel() {
  static const SectionSchema top = {{"seed", Kind::kUnsigned}, {"out", Kind::kString}};
  return top;
}

bool Matches(const Json& v, Kind kind) {
  switch (kind) {
    case Kind::kNumber:
      return v.is_number();
    case Kind::kInt:
      return v.is_number_integer();
    case Kind::kUnsigned:
      return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
    case Kind::kBool:
      return v.is_boolean();
    case Kind::kString:
      return v.is_string();
    case Kind::kIntList:
      if (!v.is_array()) return false;
      for (const auto& e : v) {
        if (!e.is_number_integer()) return false;
      }
      return true;
    case Kind::kPairList:
      if (!v.is_array()) return false;
      for (const auto& e : v) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
          return false;
        }
      }
      return true;
  }
  return false;
}

const char* KindName(Kind kind) {
  switch (kind) {
    case Kind::kNumber: return "a number";
    case Kind::kInt: return "an integer";
    case Kind::kUnsigned: return "a non-negative integer";
    case Kind::kBool: return "a boolean";
    case Kind::kString: return "a string";
    case Kind::kIntList: return "a list of integers";
    case Kind::kPairList: return "a list of integer pairs";
  }
  return "?";
}

const Json* Find(const Json& doc, const std::string& section, const std::string& key) {
  const Json* scope = &doc;
  if (!section.empty()) {
    auto it = doc.find(section);
    if (it == doc.end()) return nullptr;
    scope = &*it;
  }
  auto it = scope->find(key);
  return it == scope->end() ? nullptr : &*it;
}

}  // namespace

void ValidateConfig(const Json& doc) {
  if (!doc.is_object()) throw InputError("config: top level must be an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& name = it.key();
    if (auto top = TopLevel().find(name); top != TopLevel().end()) {
      if (!Matches(it.value(), top->second)) {
        throw InputError("config: '" + name + "' must be " + KindName(top->second));
      }
      continue;
    }
    auto sec = Schema().find(name);
    if (sec == Schema().end()) throw InputError("config: unknown key '" + name + "'");
    if (!it.value().is_object()) throw InputError("config: section '" + name + "' must be an object");
    for (auto kv = it.value().begin(); kv != it.value().end(); ++kv) {
      auto field = sec->second.find(kv.key());
      if (field == sec->second.end()) {
        throw InputError("config: unknown key '" + name + "." + kv.key() + "'");
      }
      if (!Matches(kv.value(), field->second)) {
        throw InputError("config: '" + name + "." + kv.key() + "' must be " + KindName(field->second));
      }
    }
  }
}

Json ParseConfig(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  ValidateConfig(doc);
  return doc;
}

Json LoadConfig(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open config " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ParseConfig(ss.str());
}

std::optional<double> ConfigNumber(const Json& doc, const std::string& section, const std::string& key) {
  const Json* v = Find(doc, section, key);
  return v ? std::optional<double>(v->get<double>()) : std::nullopt;
}

std::optional<long> ConfigInt(const Json& doc, const std::string& section, const std::string& key) {
  const Json* v = Find(doc, section, key);
  return v ? std::optional<long>(v->get<long>()) : std::nullopt;
}

std::optional<std::uint64_t> ConfigUnsigned(const Json& doc, const std::string& section,
                                            const std::string& key) {
  const Json* v = Find(doc, section, key);
  return v ? std::optional<std::uint64_t>(v->get<std::uint64_t>()) : std::nullopt;
}

std::optional<bool> ConfigBool(const Json& doc, const std::string& section, const std::string& key) {
  const Json* v = Find(doc, section, key);
  return v ? std::optional<bool>(v->get<bool>()) : std::nullopt;
}

std::optional<std::string> ConfigString(const Json& doc, const std::string& section,
                                        const std::string& key) {
  const Json* v = Find(doc, section, key);
  return v ? std::optional<std::string>(v->get<std::string>()) : std::nullopt;
}

std::optional<std::vector<int>> ConfigIntList(const Json& doc, const std::string& section,
                                              const std::string& key) {
  const Json* v = Find(doc, section, key);
  return v ? std::optional<std::vector<int>>(v->get<std::vector<int>>()) : std::nullopt;
}

std::optional<std::vector<std::pair<int, int>>> ConfigPairList(const Json& doc,
                                                               const std::string& section,
                                                               const std::string& key) {
  const Json* v = Find(doc, section, key);
  if (!v) return std::nullopt;
  std::vector<std::pair<int, int>> out;
  for (const auto& e : *v) out.emplace_back(e[0].get<int>(), e[1].get<int>());
  return out;
}

}  // namespace levelset
