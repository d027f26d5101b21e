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

#ifndef LEVELSET_ERROR_HPP_
#define LEVELSET_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace levelset {

// Invalid arguments, shape mismatches, malformed files. CLI exit code 1.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The zero set could not supply the requested samples.
class SamplingError : public InputError {
 public:
  using InputError::InputError;
};

// Solver breakdown (singular systems, non-finite iterates). CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, int iteration = -1)
      : std::runtime_error(what), iteration_(iteration) {}

  // IRLS iteration at which the failure happened, -1 if not iterative.
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

}  // namespace levelset

#endif  // LEVELSET_ERROR_HPP_
