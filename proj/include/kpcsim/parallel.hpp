// SPDX-License-Identifier: Apache-2.0
//
// kpcsim - limited-feedback FD-MIMO beamforming and link-level simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef KPCSIM_PARALLEL_HPP
#define KPCSIM_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace kpcsim {

inline int resolve_threads(int requested) {
    if (requested > 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(begin, end) over contiguous chunks of [0, n). Each index is
/// visited exactly once; callers write to disjoint per-index slots so the
/// result is independent of the schedule.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    const int t = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)),
                                        n > 0 ? n : 1);
    if (t <= 1 || n == 0) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(t));
    const std::size_t chunk = (n + static_cast<std::size_t>(t) - 1) / static_cast<std::size_t>(t);
    for (int i = 0; i < t; ++i) {
        const std::size_t begin = static_cast<std::size_t>(i) * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end)
            break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (std::thread& th : pool)
        th.join();
}

} // namespace kpcsim

#endif // KPCSIM_PARALLEL_HPP
