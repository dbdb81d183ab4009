#include "pairwise.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

#include "freefp/errors.hpp"

namespace freefp::detail {

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FREEFP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return std::min<unsigned>(static_cast<unsigned>(v), hw);
  }
  return hw;
}

std::size_t first_collision(std::span<const double> xs) {
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i + 1] > xs[i])) return i;
  return xs.size();
}

namespace {

void rows(std::span<const double> xs, std::span<double> out, std::size_t lo,
          std::size_t hi) {
  const std::size_t n = xs.size();
  for (std::size_t i = lo; i < hi; ++i) {
    const double xi = xs[i];
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) acc += 1.0 / (xi - xs[j]);
    for (std::size_t j = i + 1; j < n; ++j) acc += 1.0 / (xi - xs[j]);
    out[i] = acc;
  }
}

} // namespace

void interaction_field(std::span<const double> xs, std::span<double> out, double t,
                       unsigned workers) {
  const std::size_t n = xs.size();
  if (const std::size_t k = first_collision(xs); k < n) throw CollisionError(k, t);
  // Spawning only pays off for large systems.
  if (workers <= 1 || n < 1024) {
    rows(xs, out, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(rows, xs, out, lo, hi);
  }
  for (auto& th : pool) th.join();
}

} // namespace freefp::detail
