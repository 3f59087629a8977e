#pragma once

#include <cstdint>
#include <string_view>

namespace platoon {

// splitmix64 round; the single mixing primitive behind every seeded draw so
// that results are bit-identical across toolchains and platforms.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // Uniform on {lo, ..., hi} via 128-bit multiply-shift.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    auto range = static_cast<std::uint64_t>(hi - lo) + 1;
    auto wide = static_cast<unsigned __int128>(next()) * range;
    return lo + static_cast<std::int64_t>(wide >> 64);
  }

 private:
  std::uint64_t state_;
};

// Deterministic seed for a (tag, a, b) slot under a base seed. Used by the
// experiment harness so scenario draws depend only on (base, n, run) while
// model-specific randomness gets its own stream.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::uint64_t a, std::uint64_t b);

}  // namespace platoon
