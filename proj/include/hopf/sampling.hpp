#pragma once

// Counter-based random numbers, Halton points and a deterministic chunked
// parallel loop. Every stream is a pure function of (seed, stream, index), so
// results never depend on scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "hopf/polynomial.hpp"

namespace hopf {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return mix64(mix64(mix64(seed) ^ stream) + index);
}

/// Stateless-in-spirit generator: the k-th draw is mix64(key + k * golden).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  /// Uniform on (0, 1).
  double uniform_open() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }
  /// Standard normal via Box-Muller (one value per call, pair cached).
  double normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

unsigned nth_prime(std::size_t i);
double radical_inverse(std::uint64_t index, unsigned base);

/// Halton points in [0,1)^dims using the first `dims` primes.
class HaltonSequence {
 public:
  explicit HaltonSequence(std::size_t dims);
  std::size_t dims() const { return bases_.size(); }
  void point(std::uint64_t index, std::span<double> out) const;

 private:
  std::vector<unsigned> bases_;
};

/// Uniform point on the sphere |z| = radius in C^n from normalized Gaussians.
Point gaussian_sphere_point(CounterRng& rng, std::size_t n, double radius);

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs body(chunk) for chunk in [0, nchunks) on up to `threads` workers.
/// The first exception thrown by any chunk is rethrown after all workers stop.
template <class Body>
void parallel_chunks(std::size_t nchunks, unsigned threads, Body&& body) {
  threads = std::max(1u, std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(nchunks)));
  if (threads <= 1) {
    for (std::size_t k = 0; k < nchunks; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < nchunks;) {
      try {
        body(k);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(nchunks);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

/// Pairwise (cascade) sum in fixed order.
template <class T>
T pairwise_sum(std::span<const T> values) {
  if (values.empty()) return T{};
  if (values.size() <= 8) {
    T acc = values[0];
    for (std::size_t i = 1; i < values.size(); ++i) acc += values[i];
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace hopf
