#pragma once

#include <cstdint>
#include <random>

namespace als {

/// splitmix64 finalizer; used to derive independent named streams from a
/// master seed so results do not depend on evaluation order.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = mix64(master ^ 0x6a09e667f3bcc908ULL);
  s = mix64(s ^ mix64(a));
  s = mix64(s ^ mix64(b ^ 0x510e527fade682d1ULL));
  s = mix64(s ^ mix64(c ^ 0x9b05688c2b3e6c1fULL));
  return s;
}

inline std::mt19937_64 derive_rng(std::uint64_t master, std::uint64_t a,
                                  std::uint64_t b = 0, std::uint64_t c = 0) {
  return std::mt19937_64(derive_seed(master, a, b, c));
}

}  // namespace als
