#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/int_poly.hpp"

namespace wittlab {

bool is_prime(unsigned p);

// Universal integral Witt polynomials at prime p and level n. Every family
// lives in the variable list X0..X{n-1}, Y0..Y{n-1}.
struct WittPolySet {
  unsigned prime = 0;
  unsigned level = 0;
  std::vector<IntPoly> ghost;      // w_0..w_{n-1} in the X variables
  std::vector<IntPoly> sum;        // S_0..S_{n-1}
  std::vector<IntPoly> product;    // P_0..P_{n-1}
  std::vector<IntPoly> negation;   // N_0..N_{n-1}
  std::vector<IntPoly> frobenius;  // F_0..F_{n-2}

  friend bool operator==(const WittPolySet&, const WittPolySet&) = default;
};

// w_k = sum_{i<=k} p^i X_i^{p^{k-i}} for k < n.
std::vector<IntPoly> ghost_polys(unsigned p, unsigned n);
std::vector<IntPoly> gen_sum_polys(unsigned p, unsigned n);
std::vector<IntPoly> gen_prod_polys(unsigned p, unsigned n);
std::vector<IntPoly> gen_neg_polys(unsigned p, unsigned n);
// Requires n >= 2; returns F_0..F_{n-2} with w_k(F) = w_{k+1}(X).
std::vector<IntPoly> gen_frob_polys(unsigned p, unsigned n);

WittPolySet generate_witt_polys(unsigned p, unsigned n);

struct GhostIdentityReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// Expands w_k(S), w_k(P), w_k(N), w_k(F) by substitution and compares them
// term by term with w_k(X)+w_k(Y), w_k(X)w_k(Y), -w_k(X), w_{k+1}(X).
GhostIdentityReport verify_ghost_identities(const WittPolySet& set);

// Highest level accepted for prime p (defaults: 6 for p=2, 4 for p=3,
// 3 for p=5, 2 otherwise).
unsigned level_cap(unsigned p);
void set_level_cap(unsigned p, unsigned n);

// Coefficients reduced mod p with terms that vanish dropped; this is the
// shape actually evaluated over coefficient rings of characteristic p.
struct ReducedTerm {
  std::uint32_t coeff;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;  // (variable, exponent)
};

struct ReducedPoly {
  std::vector<ReducedTerm> terms;
};

ReducedPoly reduce_mod_p(const IntPoly& poly, unsigned p);

struct ReducedWittPolys {
  unsigned prime = 0;
  unsigned level = 0;
  std::vector<ReducedPoly> sum, product, negation, frobenius;
};

// Process-wide memo of generated sets. Returns a set of level >= n whose
// first n entries are the level-n polynomials. Consults the on-disk cache
// when one has been configured with set_witt_cache_dir.
const WittPolySet& witt_polys(unsigned p, unsigned n);
const ReducedWittPolys& reduced_witt_polys(unsigned p, unsigned n);

void set_witt_cache_dir(const std::string& dir);

}  // namespace wittlab
