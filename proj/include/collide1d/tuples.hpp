// Copyright 2026 The collide1d Authors
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

// Strictly increasing mode tuples (n_1 < ... < n_m) in colexicographic order.
//
// Colex order sorts by the last index first. The tuples over modes < n form
// a prefix of the tuples over modes < n + 1, so a sector tensor grows by
// appending when mode n is emitted into, and rank(t, n) = rank(t) + C(n, m).

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace collide1d::tuples {

/// C(n, k) with saturation at SIZE_MAX on overflow.
inline std::size_t binomial(std::size_t n, std::size_t k) noexcept {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > SIZE_MAX) return SIZE_MAX;
  }
  return static_cast<std::size_t>(acc);
}

/// Colex rank of a strictly increasing tuple.
inline std::size_t rank(std::span<const std::size_t> modes) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (i > 0 && modes[i] <= modes[i - 1]) {
      throw std::invalid_argument("tuples::rank: indices must be strictly increasing");
    }
    r += binomial(modes[i], i + 1);
  }
  return r;
}

/// Inverse of rank() for tuples of length out.size().
inline void unrank(std::size_t r, std::span<std::size_t> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    const std::size_t k = i + 1;
    // largest c with C(c, k) <= r
    std::size_t c = k - 1;
    while (binomial(c + 1, k) <= r) ++c;
    out[i] = c;
    r -= binomial(c, k);
  }
}

/// First tuple (0, 1, ..., m-1).
inline std::vector<std::size_t> first(std::size_t m) {
  std::vector<std::size_t> t(m);
  for (std::size_t i = 0; i < m; ++i) t[i] = i;
  return t;
}

/// Advances to the colex successor among tuples over modes < n_modes.
/// Returns false after the last tuple.
inline bool next(std::span<std::size_t> t, std::size_t n_modes) noexcept {
  const std::size_t m = t.size();
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t limit = (i + 1 < m) ? t[i + 1] : n_modes;
    if (t[i] + 1 < limit) {
      ++t[i];
      for (std::size_t j = 0; j < i; ++j) t[j] = j;
      return true;
    }
  }
  return false;
}

/// Calls fn(tuple, rank) for every m-tuple over modes < n_modes, in rank order.
template <class Fn>
void for_each(std::size_t m, std::size_t n_modes, Fn&& fn) {
  if (m > n_modes) return;
  auto t = first(m);
  std::size_t r = 0;
  do {
    fn(std::span<const std::size_t>(t), r++);
  } while (next(t, n_modes));
}

}  // namespace collide1d::tuples
