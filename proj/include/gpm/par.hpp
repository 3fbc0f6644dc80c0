#pragma once

#include <cstddef>
#include <vector>

namespace gpm::par {

// Global switch between the OpenMP path and the serial reference path.
// Reports must be bit-identical either way: parallel loops only fill
// independent slots, all reductions run serially in index order.
bool& use_parallel();

namespace detail {
template <class F>
void fill_serial(std::size_t n, double* out, F&& f) {
  for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
}

template <class F>
void fill_omp(std::size_t n, double* out, F&& f) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
}
}  // namespace detail

// out[i] = f(i) for i in [0, n).
template <class F>
void map_indexed(std::size_t n, double* out, F&& f) {
  if (use_parallel()) {
    detail::fill_omp(n, out, f);
  } else {
    detail::fill_serial(n, out, f);
  }
}

template <class F>
std::vector<double> map_indexed(std::size_t n, F&& f) {
  std::vector<double> out(n);
  map_indexed(n, out.data(), f);
  return out;
}

// Serial reference, kept callable regardless of the global switch.
template <class F>
std::vector<double> map_indexed_serial(std::size_t n, F&& f) {
  std::vector<double> out(n);
  detail::fill_serial(n, out.data(), f);
  return out;
}

}  // namespace gpm::par
