#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fmpl {

// splitmix64 step: advances the state and returns the next 64-bit output.
// Used to derive independent sub-stream seeds from one master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seeded random generator with a fully pinned output sequence.
//
// The engine is the 64-bit Mersenne Twister (mt19937_64), whose output
// sequence is specified exactly by the C++ standard. Uniform doubles take
// the top 53 bits of one engine output; normals use the Box-Muller
// transform on two uniforms, returning the cosine branch first and caching
// the sine branch. No standard-library distributions are used, so identical
// seeds give bit-identical streams on any conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Derives a seed for an independent sub-stream; successive calls with
  // the same base seed and increasing stream index are decorrelated.
  static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t state = base;
    std::uint64_t out = 0;
    for (std::uint64_t k = 0; k <= stream; ++k) out = splitmix64(state);
    return out;
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fmpl
