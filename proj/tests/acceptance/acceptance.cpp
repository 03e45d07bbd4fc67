// One PASS/FAIL line per acceptance criterion. Counts and time limits are
// fixed here; the exit status is nonzero when any criterion fails.
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/cech.hpp"
#include "wittlab/chain.hpp"
#include "wittlab/module.hpp"
#include "wittlab/omega.hpp"
#include "wittlab/ore.hpp"
#include "wittlab/witt_polys.hpp"
#include "wittlab/witt_vector.hpp"

using namespace wittlab;

namespace {

constexpr std::uint64_t kSeed = 20261014;
constexpr double kGenerationSeconds = 60.0;     // per (p, n)
constexpr unsigned kOperatorInstances = 1000;   // per identity and field
constexpr unsigned kAssociativityTriples = 1000;
constexpr unsigned kTensorSamplePairs = 4000;   // q = 4
constexpr unsigned kSolverInstances = 200;      // per solver
constexpr unsigned kPresentationChanges = 20;
constexpr double kCechTableSeconds = 600.0;

using Clock = std::chrono::steady_clock;
using Outcome = std::pair<bool, std::string>;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Outcome fail(const std::string& why) { return {false, why}; }

Outcome criterion1() {
  std::ostringstream os;
  double worst = 0;
  for (auto [p, top] : {std::pair{2u, 4u}, std::pair{3u, 3u}}) {
    for (unsigned n = 1; n <= top; ++n) {
      const auto start = Clock::now();
      const auto set = generate_witt_polys(p, n);
      const double secs = seconds_since(start);
      const auto rep = verify_ghost_identities(set);
      if (!rep.ok) return fail("ghost identity fails at p=" + std::to_string(p) + " n=" + std::to_string(n));
      if (secs >= kGenerationSeconds) return fail("generation took " + std::to_string(secs) + " s");
      worst = std::max(worst, secs);
    }
  }
  os << "4 identities exact for 7 (p, n) sets; slowest generation " << worst << " s (limit " << kGenerationSeconds
     << " s)";
  return {true, os.str()};
}

Outcome criterion2() {
  std::size_t elements = 0, mismatches = 0;
  for (unsigned p : {2u, 3u}) {
    const FqContext& f = FqContext::get(p);
    for (unsigned n = 1; n <= 3; ++n) {
      BigInt mod;
      mpz_ui_pow_ui(mod.get_mpz_t(), p, n);
      const auto all = all_witt_vectors(f, n);
      std::set<std::string> images;
      for (const auto& x : all) {
        ++elements;
        images.insert(iso_zpn(x).get_str());
        for (const auto& y : all) {
          BigInt s = (iso_zpn(x) + iso_zpn(y)) % mod, m = (iso_zpn(x) * iso_zpn(y)) % mod;
          if (iso_zpn(x + y) != s || iso_zpn(x * y) != m) ++mismatches;
        }
      }
      if (images.size() != all.size()) return fail("map not bijective at p=" + std::to_string(p));
    }
  }
  if (mismatches) return fail(std::to_string(mismatches) + " mismatches");
  return {true, std::to_string(elements) + " elements, all pairs, both operations, 0 mismatches"};
}

// Levels follow V: W_{n-1} -> W_n and F: W_{n+1} -> W_n, so every identity
// is an equation in W_n with n <= 4.
Outcome criterion3(std::mt19937_64& rng) {
  const CoeffRing r2 = CoeffRing::fq(FqContext::get(2));
  const WittFq two = WittFq::teichmuller(r2, r2.field->one(), 4) + WittFq::teichmuller(r2, r2.field->one(), 4);
  if (!(two == WittFq(r2, {r2.field->zero(), r2.field->one(), r2.field->zero(), r2.field->zero()})))
    return fail("teich(1)+teich(1) = " + two.to_string());
  std::size_t failures = 0, checks = 0;
  for (unsigned q : {2u, 4u, 9u}) {
    const FqContext& f = FqContext::of_order(q);
    const CoeffRing ring = CoeffRing::fq(f);
    for (unsigned t = 0; t < kOperatorInstances; ++t) {
      const unsigned n = 2 + static_cast<unsigned>(rng() % 3);
      const WittFq a = random_witt(f, n, rng), b = random_witt(f, n - 1, rng);
      const WittFq pa = a.mul_by_p();
      failures += !(a.verschiebung().frobenius().restrict(n) == pa);              // FV = p
      failures += !(a.restrict(n - 1).frobenius().verschiebung() == pa);          // VF = p
      failures += !((a.frobenius().restrict(n - 1) * b).verschiebung() == a * b.verschiebung());
      failures += !(a.verschiebung().restrict(n) == a.restrict(n - 1).verschiebung());  // RV = VR
      const FqElem x = f.from_index(static_cast<std::uint32_t>(rng() % q));
      const FqElem y = f.from_index(static_cast<std::uint32_t>(rng() % q));
      failures += !(WittFq::teichmuller(ring, x, n) * WittFq::teichmuller(ring, y, n) ==
                    WittFq::teichmuller(ring, x * y, n));
      checks += 5;
    }
  }
  if (failures) return fail(std::to_string(failures) + " failures");
  return {true, std::to_string(kOperatorInstances) + " instances per identity over F_2, F_4, F_9 (n = 2..4), " +
                    std::to_string(checks) + " checks, teich(1)+teich(1) = (0,1,0,0)"};
}

Outcome criterion4(std::mt19937_64& rng) {
  const FqContext& f = FqContext::of_order(4);
  const CoeffRing ring = CoeffRing::fq(f);
  const unsigned m = 3;
  const OmegaElement V = OmegaElement::V(f, m);
  std::size_t cases = 0;
  for (const FqElem& c : f.elements())
    for (unsigned k = 0; k < 4; ++k) {
      const WittFq a = WittFq::teichmuller(ring, c, m).mul_by_p_power(k);
      if (!(OmegaElement::constant(a) * V == V * OmegaElement::constant(a.frobenius())))
        return fail("aV != VF(a) at a = " + a.to_string());
      ++cases;
    }
  for (unsigned t = 0; t < kAssociativityTriples; ++t) {
    const OmegaElement x = random_omega(f, m, 3, rng), y = random_omega(f, m, 3, rng), z = random_omega(f, m, 3, rng);
    if (!((x * y) * z == x * (y * z))) return fail("associativity");
    if (!(OmegaElement(f, m, x.terms()) == x)) return fail("canonical form not idempotent");
  }
  return {true, std::to_string(cases) + " Teichmuller x p^k cases, " + std::to_string(kAssociativityTriples) +
                    " triples, canonical form idempotent"};
}

// x ~ y modulo V^n M on M = W_{n+m} exactly when R(x) = R(y).
std::pair<std::size_t, std::size_t> tensor_pairs(const FqContext& f, unsigned n, unsigned m, std::size_t sample,
                                                 std::mt19937_64& rng) {
  const unsigned top = n + m;
  const FiniteChainModule mod = FiniteChainModule::direct_sum(f, top, {top});
  const SemilinearMap v{ChainMatrix::identity(f, top, 1).scaled(p_power(f, top, 1)), -1};
  const auto r = trunc_tensor(mod, v, n);
  if (r.tor0_invariants != std::vector<unsigned>{n}) return {0, 1};
  const auto all = all_witt_vectors(f, top);
  std::set<std::vector<std::uint32_t>> image;
  auto key = [](const WittFq& x) {
    std::vector<std::uint32_t> k;
    for (const auto& c : x.components()) k.push_back(c.index());
    return k;
  };
  const SemilinearMap vn = v.power(n);
  for (const auto& z : all) image.insert(key(vn.apply({z})[0]));
  std::size_t agree = 0, total = 0;
  auto test = [&](const WittFq& x, const WittFq& y) {
    ++total;
    if ((image.count(key(x - y)) > 0) == (x.restrict(n) == y.restrict(n))) ++agree;
  };
  if (sample == 0) {
    for (const auto& x : all)
      for (const auto& y : all) test(x, y);
  } else {
    for (std::size_t i = 0; i < sample; ++i) test(all[rng() % all.size()], all[rng() % all.size()]);
  }
  return {agree, total};
}

Outcome criterion5(std::mt19937_64& rng) {
  const auto [a2, t2] = tensor_pairs(FqContext::get(2), 2, 2, 0, rng);
  if (a2 != t2 || t2 != 256) return fail("q=2: " + std::to_string(a2) + "/" + std::to_string(t2));
  const auto [a4, t4] = tensor_pairs(FqContext::of_order(4), 2, 2, kTensorSamplePairs, rng);
  if (a4 != t4) return fail("q=4: " + std::to_string(a4) + "/" + std::to_string(t4));
  return {true, "coker V^2 on W_4 = W_2 via R: 256/256 pairs at q=2, " + std::to_string(t4) + " sampled pairs at q=4"};
}

Outcome criterion6() {
  const FqContext& f = FqContext::get(2);
  const auto h2 = enumerate_homs(f, 2);
  const auto h3 = enumerate_homs(f, 3);
  if (h2.maps.size() != 8 || h2.decomposition_count != 8 || !h2.matches_pairings)
    return fail("(2,2): " + std::to_string(h2.maps.size()) + " maps");
  if (h3.maps.size() != 64 || h3.decomposition_count != 64 || !h3.matches_pairings)
    return fail("(2,3): " + std::to_string(h3.maps.size()) + " maps");
  const auto t = transition_check(f, 2);
  if (!t.ok() || t.duals_checked != 8) return fail("transition maps: " + t.to_table());
  return {true, "8 maps at (2,2), 64 at (2,3), transition = slot-wise R on all 8 duals at (2,2)"};
}

Outcome criterion7(std::mt19937_64& rng) {
  const FqContext& f = FqContext::of_order(4);
  const unsigned m = 3;
  const auto w = common_left_multiple(OmegaElement::V(f, m), OmegaElement::p(f, m));
  if (!(w.gamma == OmegaElement::p(f, m) && w.delta == OmegaElement::V(f, m) && w.residual.is_zero()))
    return fail("(V, p) gave gamma = " + w.gamma.to_string() + ", delta = " + w.delta.to_string());
  unsigned clm = 0, baer = 0;
  while (clm < kSolverInstances || baer < kSolverInstances) {
    const OmegaElement a = random_omega(f, m, 2, rng), b = random_omega(f, m, 2, rng);
    if (a.is_zero() || b.is_zero()) continue;
    const auto c = common_left_multiple(a, b);
    if (!c.exact || !c.residual.is_zero() || !(c.gamma * a == c.delta * b) || (c.gamma * a).is_zero())
      return fail("CLM on " + a.to_string() + ", " + b.to_string());
    ++clm;
    ICheckElement rhs(f, -2, 6, true);
    for (int i = -2; i <= 6; ++i)
      if (rng() % 4 != 0) rhs.set(i, PAdicApprox::from_witt(random_witt(f, m, rng)));
    const auto e = baer_extend(a, rhs);
    if (!e.residual.is_zero()) return fail("Baer on " + a.to_string());
    ++baer;
  }
  return {true, "(V, p) -> (p, V); " + std::to_string(clm) + " CLM and " + std::to_string(baer) +
                    " Baer instances with zero residual"};
}

Outcome criterion8(std::mt19937_64& rng) {
  const FqContext& f = FqContext::get(2);
  const FiniteChainModule w2 = FiniteChainModule::direct_sum(f, 2, {2});
  const SemilinearMap pm{ChainMatrix::identity(f, 2, 1).scaled(p_power(f, 2, 1)), 0};
  const SemilinearMap vm{pm.matrix, -1};
  const FiniteChainModule w11 = FiniteChainModule::direct_sum(f, 1, {1, 1});
  ChainMatrix nil(f, 1, 2, 2);
  nil.set(0, 1, WittFq::one(CoeffRing::fq(f), 1));
  const SemilinearMap zero{ChainMatrix(f, 1, 2, 2), 0}, vnil{nil, -1};
  if (!torsion_compare(w2, pm, vm).coincide) return fail("W_2 with V = p misclassified");
  if (torsion_compare(w11, zero, vnil).coincide) return fail("W_1+W_1 with nilpotent V misclassified");
  for (unsigned t = 0; t < kPresentationChanges; ++t) {
    const auto a = random_presentation_change(w2, pm, vm, rng);
    const auto b = random_presentation_change(w11, zero, vnil, rng);
    if (!torsion_compare(a.module, a.p_action, a.v_action).coincide ||
        torsion_compare(b.module, b.p_action, b.v_action).coincide)
      return fail("classification changed under a presentation change");
  }
  return {true, "W_2 (V = p) coincide, W_1+W_1 (nilpotent V) differ; stable under " +
                    std::to_string(kPresentationChanges) + " presentation changes each"};
}

Outcome criterion9() {
  for (unsigned q : {2u, 4u}) {
    const FqContext& f = FqContext::of_order(q);
    for (int d = -6; d <= 6; ++d) {
      const auto r = cohomology(f, d, 1);
      if (!r.stabilized || r.log_h0() != static_cast<std::size_t>(std::max(0, d + 1)) ||
          r.log_h1() != static_cast<std::size_t>(std::max(0, -d - 1)))
        return fail("n=1, d=" + std::to_string(d) + ", q=" + std::to_string(q));
    }
  }
  const auto m1 = cohomology(FqContext::get(2), -1, 2);
  if (!m1.stabilized || !m1.h0.empty() || m1.log_h1() != 1) return fail("(d, n) = (-1, 2)");
  const auto start = Clock::now();
  std::size_t cells = 0;
  for (unsigned n = 1; n <= 3; ++n)
    for (int d = -4; d <= 4; ++d) {
      if (!cohomology(FqContext::get(2), d, n).stabilized)
        return fail("unstabilized cell d=" + std::to_string(d) + " n=" + std::to_string(n));
      ++cells;
    }
  const double secs = seconds_since(start);
  if (secs >= kCechTableSeconds) return fail("table took " + std::to_string(secs) + " s");
  std::ostringstream os;
  os << "n=1 classical for |d| <= 6, q in {2,4}; |H^1(-1,2)| = q, H^0 = 0; " << cells << " table cells stabilized in "
     << secs << " s (limit " << kCechTableSeconds << " s)";
  return {true, os.str()};
}

Outcome criterion10() {
  std::size_t cells = 0;
  for (unsigned s = 1; s <= 3; ++s)
    for (unsigned n = 1; n <= 3; ++n) {
      const auto r = cohomology(FqContext::get(2), -static_cast<int>(s), n);
      if (!r.h0.empty()) return fail("H^0 nonzero at s=" + std::to_string(s) + " n=" + std::to_string(n));
      ++cells;
    }
  return {true, "H^0 = 0 in all " + std::to_string(cells) + " cells s in {1,2,3}, n <= 3, q = 2"};
}

}  // namespace

int main() {
  std::mt19937_64 rng(kSeed);
  const std::vector<std::function<Outcome()>> criteria = {
      criterion1,
      criterion2,
      [&] { return criterion3(rng); },
      [&] { return criterion4(rng); },
      [&] { return criterion5(rng); },
      criterion6,
      [&] { return criterion7(rng); },
      [&] { return criterion8(rng); },
      criterion9,
      criterion10,
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.first;
    std::cout << (o.first ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << o.second << " ["
              << seconds_since(start) << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
