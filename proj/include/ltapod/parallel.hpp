// Copyright 2026 The ltapod Authors
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

#ifndef LTAPOD__PARALLEL_HPP_
#define LTAPOD__PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace ltapod
{

/// Runs fn(0) .. fn(n - 1) on up to `jobs` threads (0 means one per hardware thread). Indices
/// are handed out in order; the first exception thrown by any call is rethrown after all workers
/// stop.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)> & fn);

}  // namespace ltapod

#endif  // LTAPOD__PARALLEL_HPP_
