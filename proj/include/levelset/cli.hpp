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

#ifndef LEVELSET_CLI_HPP_
#define LEVELSET_CLI_HPP_

#include <iosfwd>

namespace levelset {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNumerical = 2;

/// Entry point of the `levelset` tool.
///
/// Subcommands: recover, nullspace, rank, denoise, sample-curve,
/// phase-transition, bounds. Every subcommand accepts --seed, --out and
/// --config; explicit flags override config values. Each run writes
/// <out>/result.json, including on failure. Errors are also printed to `err`
/// as single-line JSON objects.
int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int RunCli(int argc, const char* const* argv);

}  // namespace levelset

#endif  // LEVELSET_CLI_HPP_
