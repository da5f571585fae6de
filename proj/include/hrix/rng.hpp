#pragma once

#include <cstdint>
#include <random>

namespace hrix {

// Deterministic random source. Draws are produced by explicit algorithms
// (not std::*_distribution, whose output is implementation-defined), so a
// seed pins the exact stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : base_seed_(seed), gen_(seed) {}

  // Independent substream; splitmix64 mixing keeps nearby stream ids apart.
  Rng(std::uint64_t seed, std::uint64_t stream) : Rng(derive_seed(seed, stream)) {}

  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller, pairs cached.
  double normal();

  std::size_t uniform_index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

  Rng fork(std::uint64_t stream) const { return Rng(base_seed_, stream); }

 private:
  std::uint64_t base_seed_;
  std::mt19937_64 gen_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace hrix
