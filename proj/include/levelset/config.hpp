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

#ifndef LEVELSET_CONFIG_HPP_
#define LEVELSET_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace levelset {

using Json = nlohmann::json;

/// Parses a JSON run configuration and validates it; InputError on syntax
/// errors, unknown sections or keys, and wrongly typed values.
Json LoadConfig(const std::string& path);
Json ParseConfig(const std::string& text);

/// Schema check for an already parsed document.
///
/// Top level: "seed" (unsigned), "out" (string) and the sections inputs,
/// support, kernel, rank, grid, irls, curve, sweep, bounds.
void ValidateConfig(const Json& doc);

/// Typed lookup of section.key; section "" addresses top-level keys.
std::optional<double> ConfigNumber(const Json& doc, const std::string& section, const std::string& key);
std::optional<long> ConfigInt(const Json& doc, const std::string& section, const std::string& key);
std::optional<std::uint64_t> ConfigUnsigned(const Json& doc, const std::string& section,
                                            const std::string& key);
std::optional<bool> ConfigBool(const Json& doc, const std::string& section, const std::string& key);
std::optional<std::string> ConfigString(const Json& doc, const std::string& section,
                                        const std::string& key);
std::optional<std::vector<int>> ConfigIntList(const Json& doc, const std::string& section,
                                              const std::string& key);
std::optional<std::vector<std::pair<int, int>>> ConfigPairList(const Json& doc,
                                                               const std::string& section,
                                                               const std::string& key);

}  // namespace levelset

#endif  // LEVELSET_CONFIG_HPP_
