#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "wittlab/chain.hpp"
#include "wittlab/module.hpp"
#include "wittlab/witt_vector.hpp"

namespace wittlab {

// Cech cohomology of W_n O(d) on P^1 over F_q, the Teichmuller lift of O(d),
// for the cover by U0 = Spec F_q[t] and U1 = Spec F_q[u], u = 1/t. A section
// is (s0, s1) with s1 = [t^{-d}] s0 on the overlap, so component i of a
// section is a section of O(p^i d).
//
// As a W_n(F_q)-module, W_n(F_q[t^{+-1}]) is free-by-cyclic on the monomial
// generators V^k([t^j]), k = 0 or p does not divide j, with V^k([t^j]) killed
// by p^{n-k}. The polynomial rings use the generators with j >= 0.

enum class Chart { T = 0, U = 1, Overlap = 2 };

struct CechGen {
  Chart chart = Chart::Overlap;
  unsigned k = 0;     // V-power
  std::int64_t j = 0; // exponent of t (or of u on chart U)

  friend bool operator<(const CechGen& a, const CechGen& b) {
    return std::tie(a.chart, a.k, a.j) < std::tie(b.chart, b.k, b.j);
  }
  friend bool operator==(const CechGen& a, const CechGen& b) {
    return a.chart == b.chart && a.k == b.k && a.j == b.j;
  }
  std::string to_string() const;
};

// V^k([t^j]) as an element of W_n(F_q[t^{+-1}]).
WittLaurent generator_element(const FqContext& field, unsigned n, unsigned k, std::int64_t j);

// Coordinates of x in the monomial generators: x = sum c_g g, with c_g in
// W_n(F_q) determined modulo p^{n-k}. The chart only tags the keys.
std::map<CechGen, WittFq> decompose(const WittLaurent& x, Chart chart = Chart::Overlap);
WittLaurent recompose(const FqContext& field, unsigned n, const std::map<CechGen, WittFq>& coords);

// The truncated Cech complex C^0 = W_n(F_q[t]) x W_n(F_q[u]) -> C^1 =
// W_n(F_q[t^{+-1}]), (s0, s1) -> [t^{-d}] s0 - s1, restricted to overlap
// exponents in [-window, window] and to the C^0 generators mapping there.
struct CechComplex {
  const FqContext* field = nullptr;
  std::int64_t d = 0;
  unsigned n = 0;
  std::int64_t window = 0;
  std::vector<CechGen> c0, c1;
  std::map<CechGen, std::size_t> c0_index, c1_index;
  ChainMatrix diff;  // |c1| x |c0|
  ChainMatrix rel0;  // p^{n-k} e_g, rows in C^0 coordinates
  ChainMatrix rel1;  // p^{n-k} e_g, rows in C^1 coordinates

  // Kernel generators (rows in C^0 coordinates).
  ChainMatrix h0_generators;
  // H^1 = W_n^{|c1|} / rowspan(h1_relations).
  ChainMatrix h1_relations;

  static CechComplex build(const FqContext& field, std::int64_t d, unsigned n, std::int64_t window);
};

// Smallest window for which the truncation can see every class.
std::int64_t minimal_window(unsigned p, std::int64_t d, unsigned n);

struct CohomologyResult {
  std::int64_t d = 0;
  unsigned n = 0;
  unsigned q = 0;
  std::vector<unsigned> h0, h1;
  std::int64_t window = 0;
  std::vector<std::int64_t> windows_tried;
  bool stabilized = false;
  CechComplex complex;  // at the reported window

  std::size_t log_h0() const { return log_size_from_invariants(h0); }
  std::size_t log_h1() const { return log_size_from_invariants(h1); }
};

constexpr std::size_t kCechGeneratorCap = 1024;

// Doubles the window from max(window, minimal_window) until the invariants
// agree at three consecutive windows. PrecisionError when C^1 would exceed
// kCechGeneratorCap generators first.
CohomologyResult cohomology(const FqContext& field, std::int64_t d, unsigned n, std::int64_t window = 0);

// A map between the cohomology of two complexes, induced by a W-semilinear
// map on cochains, with both sides presented at the common level `level`.
struct InducedMap {
  unsigned degree = 1;  // cohomological degree, 0 or 1
  unsigned level = 0;
  SemilinearMap map;    // target cochain coordinates <- source cochain coordinates
  ChainMatrix source_relations, target_relations;
  ChainMatrix source_generators, target_generators;  // H^0 only: kernel generators
  std::vector<unsigned> source_invariants, target_invariants;
};

enum class CechOp { R, P, F, V };
std::string to_string(CechOp op);

// R: (d, n+1) -> (d, n); p: (d, n) -> (d, n); F: (d, n) -> (p d, n-1);
// V: (p d, n) -> (d, n+1). Throws DomainError on a twist or level mismatch
// and PrecisionError when the image leaves the target window.
InducedMap induced_map(CechOp op, const CechComplex& source, const CechComplex& target, unsigned degree);

// outer o inner, both lifted to the larger level.
InducedMap compose(const InducedMap& outer, const InducedMap& inner);
// a - b vanishes on cohomology.
bool maps_agree(const InducedMap& a, const InducedMap& b);
// The image of the source generates the target.
bool is_surjective(const InducedMap& f);
// Kernel generators of f, rows in source cochain coordinates at f.level.
ChainMatrix induced_kernel_rows(const InducedMap& f);

struct VMembership {
  bool input_valid = false;   // component i has t-degree <= p^i d
  bool shifted_valid = false; // V(x) satisfies the same bound at level n+1
};

// Applies the raw shift V of W(F_q(t)) to x in W_n(F_q[t^{+-1}]) and checks
// the (d, n+1) bound at infinity: component i of degree at most p^i d.
VMembership v_membership_test(const WittLaurent& x, std::int64_t d);

struct TanakaLevel {
  unsigned n = 0;
  std::vector<unsigned> h0;             // H^0(O(-s)) at level n
  std::vector<unsigned> h1;             // H^1(O(-s)) at level n
  std::vector<unsigned> h1_twisted;     // H^1(O(-p s)) at level n
  std::vector<unsigned> ker_p, ker_v;   // on H^1(O(-p s)), V into H^1(O(-s)) at level n+1
  bool kernels_coincide = false;
};

struct TanakaReport {
  unsigned s = 0;
  unsigned q = 0;
  std::vector<TanakaLevel> levels;
  bool h0_vanishes = true;
};

TanakaReport tanaka_probe(const FqContext& field, unsigned s, unsigned n);

}  // namespace wittlab
