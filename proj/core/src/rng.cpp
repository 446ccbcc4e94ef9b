#include "wigchain/rng.hpp"

#include <cmath>

namespace wigchain {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = seed;
  splitmix64(s);
  s ^= a + 0x9e3779b97f4a7c15ULL;
  splitmix64(s);
  s ^= b + 0xd1b54a32d192ed03ULL;
  return splitmix64(s);
}

double Rng::uniform() {
  // 53 random bits mapped to (0, 1]; never returns 0, safe for log().
  return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * kPi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

cplx Rng::complex_normal() {
  double u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-std::log(u1));
  double a = 2.0 * kPi * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

} // namespace wigchain
