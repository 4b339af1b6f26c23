#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace barymap {

inline int default_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Runs fn(chunk_index, begin, end) over a fixed partition of [0, count) into
// kSumChunks contiguous chunks. The partition does not depend on the worker
// count, so reductions merged in chunk order give identical results for any
// number of threads.
inline constexpr int kSumChunks = 256;

template <class Fn>
void for_each_chunk(std::size_t count, int workers, Fn&& fn) {
  const int chunks = count < static_cast<std::size_t>(kSumChunks)
                         ? static_cast<int>(count)
                         : kSumChunks;
  if (chunks == 0) return;
  if (workers < 1) workers = 1;
#ifdef _OPENMP
#pragma omp parallel for num_threads(workers) schedule(dynamic)
#endif
  for (int c = 0; c < chunks; ++c) {
    const std::size_t begin = count * static_cast<std::size_t>(c) / chunks;
    const std::size_t end = count * (static_cast<std::size_t>(c) + 1) / chunks;
    fn(c, begin, end);
  }
}

// Deterministic parallel sum of fn(i) over [0, count).
template <class Fn>
double chunked_sum(std::size_t count, int workers, Fn&& fn) {
  std::vector<double> partial(kSumChunks, 0.0);
  for_each_chunk(count, workers, [&](int c, std::size_t begin, std::size_t end) {
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) acc += fn(i);
    partial[c] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace barymap
