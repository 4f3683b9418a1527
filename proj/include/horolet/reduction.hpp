#pragma once

#include <thread>
#include <vector>

#include "horolet/types.hpp"

namespace horolet {

// Pairwise cascade over a filled buffer. The tree shape depends only on the
// buffer length, so a sum is bit-identical no matter how many threads filled
// the slots.
template <typename T>
T pairwise_sum(const T* v, std::size_t n) {
  if (n == 0) return T{};
  if (n <= 8) {
    T acc = v[0];
    for (std::size_t i = 1; i < n; ++i) acc += v[i];
    return acc;
  }
  std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(v.data(), v.size());
}

inline int clamp_threads(int requested) {
  if (requested < 1) return 1;
  return requested > 64 ? 64 : requested;
}

// Static block partition: slot i is always computed from the same inputs, so
// outputs do not depend on the worker count.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  threads = clamp_threads(threads);
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t nt = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  std::size_t chunk = (n + nt - 1) / nt;
  for (std::size_t t = 0; t < nt; ++t) {
    std::size_t lo = t * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Fill a per-slot buffer in parallel, reduce serially in fixed order.
template <typename T, typename Fn>
T parallel_reduce(std::size_t n, int threads, Fn&& term) {
  std::vector<T> buf(n);
  parallel_for(n, threads, [&](std::size_t i) { buf[i] = term(i); });
  return pairwise_sum(buf);
}

}  // namespace horolet
