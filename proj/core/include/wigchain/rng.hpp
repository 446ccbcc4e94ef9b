#pragma once

#include <cstdint>
#include <random>

#include "wigchain/types.hpp"

namespace wigchain {

// splitmix64 step; used both as a standalone mixer and to derive
// independent per-task seeds from a master seed.
std::uint64_t splitmix64(std::uint64_t& state);

// Stateless combine: seed ^ hash(a, b).  All Monte Carlo code derives
// per-sample streams through this, so results do not depend on the
// order in which worker threads pick up tasks.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

// Deterministic generator for simulation use.  Gaussians come from an
// explicit Box-Muller transform on 53-bit uniforms so the byte stream
// is fixed by the seed alone, independent of any library distribution
// internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // uniform in (0, 1]
  double uniform();
  // standard real N(0,1)
  double normal();
  // complex with independent N(0,1/2) parts: E z = 0, E|z|^2 = 1, E z^2 = 0
  cplx complex_normal();

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace wigchain
