#include "wittlab/selftest.hpp"

#include <chrono>
#include <exception>
#include <functional>
#include <random>
#include <utility>

#include "wittlab/cech.hpp"
#include "wittlab/module.hpp"
#include "wittlab/omega.hpp"
#include "wittlab/ore.hpp"
#include "wittlab/witt_polys.hpp"
#include "wittlab/witt_vector.hpp"

namespace wittlab {

namespace {

using Outcome = std::pair<bool, std::string>;

Outcome ghost_identities() {
  std::size_t sets = 0;
  for (auto [p, top] : {std::pair{2u, 4u}, std::pair{3u, 3u}}) {
    for (unsigned n = 1; n <= top; ++n) {
      const auto rep = verify_ghost_identities(generate_witt_polys(p, n));
      if (!rep.ok) return {false, "p=" + std::to_string(p) + " n=" + std::to_string(n) + ": " + rep.failures.front()};
      ++sets;
    }
  }
  return {true, std::to_string(sets) + " (p, n) sets"};
}

Outcome zpn_oracle() {
  std::size_t pairs = 0;
  for (unsigned p : {2u, 3u}) {
    const FqContext& f = FqContext::get(p);
    for (unsigned n = 1; n <= 3; ++n) {
      BigInt mod;
      mpz_ui_pow_ui(mod.get_mpz_t(), p, n);
      const auto all = all_witt_vectors(f, n);
      for (const auto& x : all) {
        if (!(iso_zpn_inverse(f, n, iso_zpn(x)) == x)) return {false, "round trip " + x.to_string()};
        for (const auto& y : all) {
          BigInt s = (iso_zpn(x) + iso_zpn(y)) % mod, m = (iso_zpn(x) * iso_zpn(y)) % mod;
          if (iso_zpn(x + y) != s || iso_zpn(x * y) != m) return {false, x.to_string() + ", " + y.to_string()};
          ++pairs;
        }
      }
    }
  }
  return {true, std::to_string(pairs) + " pairs"};
}

Outcome operator_identities(std::mt19937_64& rng, unsigned instances) {
  const CoeffRing r2 = CoeffRing::fq(FqContext::get(2));
  const WittFq two = WittFq::teichmuller(r2, r2.field->one(), 3) + WittFq::teichmuller(r2, r2.field->one(), 3);
  if (!(two == WittFq(r2, {r2.field->zero(), r2.field->one(), r2.field->zero()})))
    return {false, "teich(1)+teich(1) = " + two.to_string()};
  std::size_t checks = 0;
  for (unsigned q : {2u, 4u, 9u}) {
    const FqContext& f = FqContext::of_order(q);
    const CoeffRing ring = CoeffRing::fq(f);
    std::uniform_int_distribution<unsigned> lvl(1, 3);
    for (unsigned t = 0; t < instances; ++t) {
      const unsigned n = lvl(rng);
      const WittFq a = random_witt(f, n, rng), b = random_witt(f, n, rng);
      const WittFq pa = a.zero_pad(n + 1).mul_by_p();
      if (!(a.verschiebung().frobenius() == pa)) return {false, "FV = p on " + a.to_string()};
      if (!(a.frobenius().verschiebung() == pa)) return {false, "VF = p on " + a.to_string()};
      if (!((a.frobenius() * b).verschiebung() == a.zero_pad(n + 1) * b.verschiebung()))
        return {false, "V(F(a)b) = aV(b) on " + a.to_string()};
      if (n >= 2 && !(a.verschiebung().restrict(n) == a.restrict(n - 1).verschiebung()))
        return {false, "RV = VR on " + a.to_string()};
      const FqElem x = f.from_index(static_cast<std::uint32_t>(rng() % q));
      const FqElem y = f.from_index(static_cast<std::uint32_t>(rng() % q));
      if (!(WittFq::teichmuller(ring, x, n) * WittFq::teichmuller(ring, y, n) == WittFq::teichmuller(ring, x * y, n)))
        return {false, "Teichmuller multiplicativity"};
      ++checks;
    }
  }
  return {true, std::to_string(checks) + " instances"};
}

Outcome omega_relations(std::mt19937_64& rng, unsigned instances) {
  const FqContext& f = FqContext::of_order(4);
  const CoeffRing ring = CoeffRing::fq(f);
  const unsigned m = 3;
  const OmegaElement V = OmegaElement::V(f, m);
  std::size_t cases = 0;
  for (const FqElem& c : f.elements()) {
    for (unsigned k = 0; k < 4; ++k) {
      const WittFq a = WittFq::teichmuller(ring, c, m).mul_by_p_power(k);
      if (!(OmegaElement::constant(a) * V == V * OmegaElement::constant(a.frobenius())))
        return {false, "aV = VF(a) at a = " + a.to_string()};
      ++cases;
    }
  }
  for (unsigned t = 0; t < instances; ++t) {
    const OmegaElement x = random_omega(f, m, 3, rng), y = random_omega(f, m, 3, rng), z = random_omega(f, m, 3, rng);
    if (!((x * y) * z == x * (y * z))) return {false, "associativity"};
    if (!(OmegaElement(f, m, x.terms()) == x)) return {false, "canonical form not idempotent"};
  }
  return {true, std::to_string(cases) + " Teichmuller cases, " + std::to_string(instances) + " triples"};
}

Outcome truncation_tensor() {
  const FqContext& f = FqContext::get(2);
  const FiniteChainModule m = FiniteChainModule::direct_sum(f, 4, {4});
  const SemilinearMap v{ChainMatrix::identity(f, 4, 1).scaled(p_power(f, 4, 1)), -1};
  const auto r = trunc_tensor(m, v, 2);
  const bool ok = r.tor0_invariants == std::vector<unsigned>{2};
  return {ok, "coker V^2 on W_4 = " + invariants_to_string(r.tor0_invariants)};
}

Outcome duality_counts() {
  const FqContext& f = FqContext::get(2);
  const auto h2 = enumerate_homs(f, 2);
  if (h2.maps.size() != 8 || !h2.matches_pairings) return {false, "(2,2): " + std::to_string(h2.maps.size()) + " maps"};
  const auto t = transition_check(f, 2);
  return {t.ok(), "8 maps at (2,2); transition pi = slot-wise R " + std::string(t.ok() ? "holds" : "fails")};
}

Outcome solver_witnesses(std::mt19937_64& rng, unsigned instances) {
  const FqContext& f = FqContext::of_order(4);
  const unsigned m = 3;
  const OmegaElement V = OmegaElement::V(f, m), P = OmegaElement::p(f, m);
  const auto w = common_left_multiple(V, P);
  if (!(w.gamma == P && w.delta == V && w.residual.is_zero())) return {false, "(V, p) gave " + w.gamma.to_string()};
  std::uniform_int_distribution<int> slot(0, 3);
  for (unsigned t = 0; t < instances; ++t) {
    OmegaElement a = random_omega(f, m, 2, rng), b = random_omega(f, m, 2, rng);
    if (a.is_zero() || b.is_zero()) continue;
    const auto c = common_left_multiple(a, b);
    if (!c.exact || !(c.gamma * a == c.delta * b)) return {false, "CLM residual on " + a.to_string()};
    ICheckElement rhs(f, 0, 8, true);
    for (int i = 0; i <= 8; ++i)
      if (slot(rng) != 0) rhs.set(i, PAdicApprox::from_witt(random_witt(f, m, rng)));
    const auto e = baer_extend(a, rhs);
    if (!e.residual.is_zero()) return {false, "Baer residual on " + a.to_string()};
  }
  return {true, "(V, p) -> (p, V); " + std::to_string(instances) + " random pairs"};
}

Outcome torsion_examples(std::mt19937_64& rng) {
  const FqContext& f = FqContext::get(2);
  const WittFq p2 = p_power(f, 2, 1);
  const FiniteChainModule w2 = FiniteChainModule::direct_sum(f, 2, {2});
  const SemilinearMap pm{ChainMatrix::identity(f, 2, 1).scaled(p2), 0};
  const auto a = torsion_compare(w2, pm, SemilinearMap{pm.matrix, -1});
  const FiniteChainModule w11 = FiniteChainModule::direct_sum(f, 1, {1, 1});
  ChainMatrix nil(f, 1, 2, 2);
  nil.set(0, 1, WittFq::one(CoeffRing::fq(f), 1));
  const SemilinearMap zero{ChainMatrix(f, 1, 2, 2), 0};
  const auto b = torsion_compare(w11, zero, SemilinearMap{nil, -1});
  const auto z = torsion_compare(FiniteChainModule(f, 2, 0), SemilinearMap{ChainMatrix(f, 2, 0, 0), 0},
                                 SemilinearMap{ChainMatrix(f, 2, 0, 0), -1});
  if (!a.coincide || b.coincide || !z.coincide) return {false, "misclassified"};
  for (int t = 0; t < 5; ++t) {
    const auto ch = random_presentation_change(w11, zero, SemilinearMap{nil, -1}, rng);
    if (torsion_compare(ch.module, ch.p_action, ch.v_action).coincide) return {false, "unstable under presentation change"};
  }
  return {true, "W_2 coincide, W_1+W_1 nilpotent V differ, 0 coincide"};
}

Outcome cech_classical() {
  for (unsigned q : {2u, 4u}) {
    const FqContext& f = FqContext::of_order(q);
    for (int d = -4; d <= 4; ++d) {
      const auto r = cohomology(f, d, 1);
      if (!r.stabilized || r.log_h0() != static_cast<std::size_t>(std::max(0, d + 1)) ||
          r.log_h1() != static_cast<std::size_t>(std::max(0, -d - 1)))
        return {false, "d=" + std::to_string(d) + " q=" + std::to_string(q)};
    }
  }
  const auto r = cohomology(FqContext::get(2), -1, 2);
  if (!r.h0.empty() || r.log_h1() != 1) return {false, "(d, n) = (-1, 2)"};
  return {true, "n = 1 for |d| <= 4, q in {2, 4}; |H^1(-1, 2)| = q"};
}

Outcome tanaka() {
  for (unsigned s = 1; s <= 3; ++s) {
    const auto rep = tanaka_probe(FqContext::get(2), s, 2);
    if (!rep.h0_vanishes) return {false, "H^0 nonzero at s = " + std::to_string(s)};
  }
  return {true, "H^0 = 0 for s <= 3, n <= 2"};
}

}  // namespace

std::vector<SelftestCheck> run_selftest(std::uint64_t seed, unsigned instances, std::ostream* log) {
  std::mt19937_64 rng(seed);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"ghost identities", ghost_identities},
      {"Z/p^n oracle", zpn_oracle},
      {"F, V, R, Teichmuller identities", [&] { return operator_identities(rng, instances); }},
      {"omega relation and associativity", [&] { return omega_relations(rng, instances); }},
      {"truncation tensor", truncation_tensor},
      {"duality enumeration", duality_counts},
      {"solver witnesses", [&] { return solver_witnesses(rng, instances); }},
      {"torsion comparison", [&] { return torsion_examples(rng); }},
      {"Cech cohomology", cech_classical},
      {"Tanaka vanishing", tanaka},
  };
  std::vector<SelftestCheck> out;
  for (const auto& [name, fn] : checks) {
    const auto start = std::chrono::steady_clock::now();
    SelftestCheck c{name, false, ""};
    try {
      std::tie(c.passed, c.detail) = fn();
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (log) *log << (c.passed ? "ok    " : "FAIL  ") << name << " (" << c.detail << ", " << secs << " s)\n";
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace wittlab
