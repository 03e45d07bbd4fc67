#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wittlab/chain.hpp"
#include "wittlab/omega.hpp"

namespace wittlab {

// Invariants {e_i} of W_n^g / rowspan(relations): the module is
// isomorphic to the direct sum of the W_{e_i}(F_q), 1 <= e_i <= n, listed in
// non-decreasing order.
std::vector<unsigned> chain_normal_form(const ChainMatrix& relations);

// W_n(F_q)^g modulo the row span of `relations` (g columns, one row per
// relation).
struct FiniteChainModule {
  const FqContext* field = nullptr;
  unsigned level = 0;
  std::size_t generators = 0;
  ChainMatrix relations;

  FiniteChainModule() = default;
  FiniteChainModule(const FqContext& f, unsigned n, std::size_t g);
  FiniteChainModule(const FqContext& f, unsigned n, std::size_t g, ChainMatrix rel);
  // The direct sum of W_{e}(F_q) for e in invariants, presented at level n.
  static FiniteChainModule direct_sum(const FqContext& f, unsigned n, const std::vector<unsigned>& invariants);

  std::vector<unsigned> invariants() const { return chain_normal_form(relations); }
  std::size_t log_cardinality() const;
  bool contains_relation(const ChainVector& v) const;
};

std::size_t log_size_from_invariants(const std::vector<unsigned>& inv);
std::string invariants_to_string(const std::vector<unsigned>& inv);

// Submodules of a presented module W^g / Rel are given by generator rows.
// log_q of |span(gens) + Rel| / |Rel|.
std::size_t submodule_log_size(const ChainMatrix& gens, const ChainMatrix& rel);
std::vector<unsigned> submodule_invariants(const ChainMatrix& gens, const ChainMatrix& rel);
bool submodule_contains(const ChainMatrix& big, const ChainMatrix& small, const ChainMatrix& rel);
bool submodules_equal(const ChainMatrix& a, const ChainMatrix& b, const ChainMatrix& rel);

// Generators (rows, source coordinates) of the kernel of the map
// W^{g0}/rel_src -> W^{g1}/rel_tgt induced by x -> a x (a is g1 x g0). The
// kernel as a submodule is span(result) + rel_src.
ChainMatrix induced_kernel(const ChainMatrix& a, const ChainMatrix& rel_tgt);

// f(c) = matrix * sigma^twist(c), with sigma acting entry-wise on W_n(F_q).
struct SemilinearMap {
  ChainMatrix matrix;
  long long twist = 0;

  ChainVector apply(const ChainVector& c) const;
  // (*this) o inner
  SemilinearMap compose(const SemilinearMap& inner) const;
  SemilinearMap power(unsigned k) const;
};

// f maps every relation row into span(rel).
bool semilinear_well_defined(const SemilinearMap& f, const ChainMatrix& rel);

// Kernel generators of a semilinear self-map on W^g/rel: the preimage of
// span(rel) under the matrix, pulled back by sigma^{-twist}.
ChainMatrix semilinear_kernel(const SemilinearMap& f, const ChainMatrix& rel);

// Tensor of omega_n with a left omega-module M over W_N(F_q), N >= n,
// through 0 -> omega -> omega -> omega_n -> 0 (the first map is right
// multiplication by V^n): Tor_0 is the cokernel of V^n on M and Tor_1 its
// kernel.
struct TruncTensorResult {
  FiniteChainModule tor0;  // at level n
  std::vector<unsigned> tor0_invariants;
  std::vector<unsigned> tor1_invariants;
};

TruncTensorResult trunc_tensor(const FiniteChainModule& m, const SemilinearMap& v_action, unsigned n);

// Element of Hom_{W_n}(omega_n, W_n): slots b_i in W_{n-i}(F_q) acting by
// phi(sum a_i V^i) = sum_i p^i * lift(b_i a_i).
struct DualityElement {
  const FqContext* field = nullptr;
  std::vector<WittFq> slots;

  unsigned level() const { return static_cast<unsigned>(slots.size()); }
  friend bool operator==(const DualityElement& a, const DualityElement& b) { return a.slots == b.slots; }
};

DualityElement duality_from_trunc(const OmegaTrunc& x);
std::vector<DualityElement> dual_basis(const FqContext& field, unsigned n);
std::vector<DualityElement> all_duals(const FqContext& field, unsigned n);
WittFq pairing(const DualityElement& phi, const OmegaTrunc& x);
// a . phi
DualityElement dual_scale(const WittFq& a, const DualityElement& phi);
// slot-wise R to level n-1
DualityElement dual_pi(const DualityElement& phi);

// All W_n-linear maps omega_n -> W_n found by exhaustive search over the
// images (y_0, ..., y_{n-1}) in W_n^n of the slot generators V^i: a
// candidate counts when x -> sum lift(a_i) y_i is well defined, additive and
// W_n-linear on every element of omega_n. Gated to |omega_n| <= 2^16.
struct HomEnumeration {
  std::size_t candidates = 0;
  std::vector<std::vector<WittFq>> maps;  // accepted image tuples
  std::size_t decomposition_count = 0;    // prod_i |W_{n-i}|
  bool matches_pairings = false;          // each map is pairing(b, .) for exactly one b
};

HomEnumeration enumerate_homs(const FqContext& field, unsigned n);

struct TransitionReport {
  unsigned level = 0;
  std::size_t duals_checked = 0;
  std::size_t taus_checked = 0;
  bool pi_is_slotwise_restriction = true;
  bool unique_factorization = true;
  bool surjective = true;
  std::vector<std::string> counterexamples;

  bool ok() const { return pi_is_slotwise_restriction && unique_factorization && surjective; }
  std::string to_table() const;
};

// For each dual w at level n, finds every level-(n-1) dual u with
// p * lift(u(tau)) = w(rho(tau)) for all tau in omega_{n-1}, and checks that
// exactly one exists and equals dual_pi(w). With sample > 0 only that many
// duals (chosen with rng) are tested.
TransitionReport transition_check(const FqContext& field, unsigned n, std::size_t sample = 0,
                                  unsigned long long seed = 0);

}  // namespace wittlab
