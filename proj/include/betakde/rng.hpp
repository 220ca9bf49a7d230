#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace betakde::rng {

//! SplitMix64 step; used to derive independent stream seeds from a master
//! seed and index coordinates.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

//! Deterministic seed for the stream identified by (master, a, b).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0) {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64(s);
  s = h ^ (a + 0x9e3779b97f4a7c15ULL);
  h = splitmix64(s);
  s = h ^ (b + 0xd1b54a32d192ed03ULL);
  return splitmix64(s);
}

//! Random stream with toolchain-independent output: the mt19937_64 engine
//! is fully specified by the standard and the uniform/normal mappings are
//! implemented here rather than taken from <random> distributions.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  //! Uniform on [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  //! Standard normal draw (Marsaglia polar method).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace betakde::rng
