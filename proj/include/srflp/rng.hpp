#ifndef SRFLP_RNG_HPP
#define SRFLP_RNG_HPP

#include <cstdint>
#include <random>

namespace srflp {

// Seedable generator with explicit draw algorithms so that replays are exact.
// Stream seeds are derived through splitmix64, giving independent per-restart
// streams from one base seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static Rng stream(std::uint64_t base_seed, std::uint64_t stream_id) {
    return Rng(mix(base_seed + 0x632be59bd9b4e019ULL * (stream_id + 1)));
  }

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0,1), 53 mantissa bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n).
  int next_index(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace srflp

#endif  // SRFLP_RNG_HPP
