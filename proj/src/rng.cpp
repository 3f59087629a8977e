#include "platoon/rng.hpp"

namespace platoon {

std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::uint64_t a, std::uint64_t b) {
  // FNV-1a over the tag keeps streams for different purposes disjoint.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  std::uint64_t s = mix64(base ^ h);
  s = mix64(s ^ a);
  s = mix64(s ^ b);
  return s;
}

}  // namespace platoon
