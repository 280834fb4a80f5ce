// Copyright 2026 The qgeo Authors
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

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace qgeo {

/// Evaluates f(0), ..., f(n - 1) on up to `workers` threads. Worker w takes
/// indices w, w + workers, ... and writes only its own slots, so the result
/// does not depend on the worker count. The first exception is rethrown.
template <class F>
auto parallel_map(std::size_t n, int workers, F f)
    -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<std::optional<R>> slots(n);
  const std::size_t w = std::clamp<std::size_t>(workers > 0 ? workers : 1, 1, std::max<std::size_t>(n, 1));
  std::vector<std::exception_ptr> errors(w);
  auto body = [&](std::size_t id) {
    try {
      for (std::size_t i = id; i < n; i += w) slots[i].emplace(f(i));
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  if (w == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (std::size_t id = 0; id < w; ++id) pool.emplace_back(body, id);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace qgeo
