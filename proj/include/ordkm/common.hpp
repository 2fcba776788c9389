#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace ordkm {

// Library code throws; the CLI maps exception types to exit codes
// (UsageError -> 2, CertificateError -> 3, ResourceCapError -> 4).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CertificateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic RNG wrapper. Draws are derived from raw mt19937_64 output so the
// stream does not depend on libstdc++'s distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)), seed_(seed) {}

  // Independent child generator; per-trial randomness is derived from the trial
  // index so results do not depend on which worker thread runs the trial.
  Rng child(std::uint64_t index) const {
    return Rng(splitmix64(seed_ ^ splitmix64(index + 0x51ed2701ULL)));
  }

  double uniform01() { return double(gen_() >> 11) * 0x1.0p-53; }  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // (0, scale]
  double positive(double scale) { return scale * (1.0 - uniform01()); }
  // inclusive on both ends
  int uniform_int(int lo, int hi) {
    return lo + int(gen_() % std::uint64_t(hi - lo + 1));
  }
  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  std::uint64_t seed_;
};

}  // namespace ordkm
