#pragma once

#include <cstdint>
#include <exception>
#include <type_traits>
#include <vector>

#include "jcir/rng.hpp"

namespace jcir {

// Monte-Carlo ensembles. Replicate r always draws from
// Rng::for_stream(seed, r), so the parallel kernel and the serial reference
// return bit-identical results regardless of thread count or scheduling.

template <class Fn>
using replicate_result_t = std::invoke_result_t<Fn&, Rng&, std::size_t>;

// Serial reference implementation.
template <class Fn>
std::vector<replicate_result_t<Fn>> ensemble_serial(std::size_t n, std::uint64_t seed, Fn&& fn) {
  std::vector<replicate_result_t<Fn>> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    Rng rng = Rng::for_stream(seed, r);
    out[r] = fn(rng, r);
  }
  return out;
}

// OpenMP kernel. The first exception thrown by any replicate is rethrown
// after the parallel region.
template <class Fn>
std::vector<replicate_result_t<Fn>> ensemble_parallel(std::size_t n, std::uint64_t seed, Fn&& fn) {
  std::vector<replicate_result_t<Fn>> out(n);
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t r = 0; r < count; ++r) {
    try {
      Rng rng = Rng::for_stream(seed, static_cast<std::uint64_t>(r));
      out[static_cast<std::size_t>(r)] = fn(rng, static_cast<std::size_t>(r));
    } catch (...) {
#pragma omp critical(jcir_ensemble_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

// Number of threads the parallel kernel will use.
int ensemble_threads() noexcept;

}  // namespace jcir
