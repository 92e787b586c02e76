#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace survdiff {

// splitmix64 finalizer (standard constants); good avalanche even for
// counter-like inputs, which is exactly how we use it below.
inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives a stream seed from a master seed and a path of counters
// (e.g. {replication, method}).  Each component is mixed in separately so
// distinct paths land on unrelated streams, and the derivation is a pure
// function of its inputs — results never depend on evaluation order or
// thread count.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t s = splitmix64(master);
  for (std::uint64_t p : path) s = splitmix64(s ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  return s;
}

inline std::mt19937_64 make_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace survdiff
