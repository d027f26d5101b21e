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

#ifndef LEVELSET_PARALLEL_HPP_
#define LEVELSET_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace levelset {

/// Worker count: LEVELSET_THREADS if set and positive, otherwise the
/// hardware concurrency (0 means auto).
int ThreadCount();

/// Calls body(i) for i in [0, n). Iterations are split into contiguous
/// blocks; each index is handled exactly once, so bodies that only write to
/// slot i give results independent of the thread count.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace levelset

#endif  // LEVELSET_PARALLEL_HPP_
