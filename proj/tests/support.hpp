#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "wittlab/finite_field.hpp"
#include "wittlab/witt_vector.hpp"

namespace wittlab::test {

inline constexpr std::uint64_t kSeed = 20240607;

inline std::mt19937_64 rng_for(const std::string& name) {
  std::seed_seq seq(name.begin(), name.end());
  std::mt19937_64 rng(seq);
  rng.discard(kSeed % 97);
  return rng;
}

inline BigInt big(long long v) { return BigInt(std::to_string(v)); }

inline WittFq wf(const FqContext& f, std::initializer_list<unsigned> indices) {
  std::vector<FqElem> c;
  for (unsigned i : indices) c.push_back(f.from_index(i));
  return WittFq(CoeffRing::fq(f), c);
}

}  // namespace wittlab::test
