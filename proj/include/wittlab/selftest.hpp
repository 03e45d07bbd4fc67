#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace wittlab {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Desk-scale invariant suite over every layer. Randomized checks draw from
// a generator seeded with `seed`; `instances` is the sample size per
// randomized property. Progress lines go to log when it is non-null.
std::vector<SelftestCheck> run_selftest(std::uint64_t seed, unsigned instances = 200, std::ostream* log = nullptr);

}  // namespace wittlab
