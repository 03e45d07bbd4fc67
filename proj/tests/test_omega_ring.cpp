#include <doctest.h>

#include <set>

#include "support.hpp"
#include "wittlab/errors.hpp"
#include "wittlab/omega.hpp"

using namespace wittlab;
using test::wf;

TEST_SUITE("omega_ring") {
  TEST_CASE("commutation with V") {
    const FqContext& f = FqContext::of_order(4);
    const CoeffRing r = CoeffRing::fq(f);
    const unsigned m = 3;
    const OmegaElement V = OmegaElement::V(f, m);
    const FqElem g = f.generator();
    // V b = F^{-1}(b) V; on F_4, F^{-1} = sigma = squaring.
    const OmegaElement lhs = V * OmegaElement::constant(WittFq::teichmuller(r, g, m));
    const OmegaElement rhs = OmegaElement::constant(WittFq::teichmuller(r, g.pow(2), m)) * V;
    CHECK(lhs == rhs);
    const OmegaElement P = OmegaElement::p(f, m);
    CHECK(P * V == V * P);
  }

  TEST_CASE("aV = VF(a) for every coefficient at precision 2 over F_4") {
    const FqContext& f = FqContext::of_order(4);
    const OmegaElement V = OmegaElement::V(f, 2);
    for (const auto& a : all_witt_vectors(f, 2))
      CHECK(OmegaElement::constant(a) * V == V * OmegaElement::constant(a.frobenius()));
  }

  TEST_CASE("associativity and unit on random triples") {
    auto rng = test::rng_for("omega-assoc");
    for (unsigned q : {4u, 9u}) {
      const FqContext& f = FqContext::of_order(q);
      const OmegaElement one = OmegaElement::one(f, 3);
      for (int t = 0; t < 150; ++t) {
        const auto x = random_omega(f, 3, 3, rng), y = random_omega(f, 3, 3, rng), z = random_omega(f, 3, 3, rng);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((x + y) * z == x * z + y * z);
        CHECK(one * x == x);
        CHECK(x * one == x);
        CHECK((x - x).is_zero());
      }
    }
  }

  TEST_CASE("left W-action") {
    auto rng = test::rng_for("omega-left");
    const FqContext& f = FqContext::of_order(4);
    for (int t = 0; t < 100; ++t) {
      const WittFq a = random_witt(f, 3, rng), b = random_witt(f, 3, rng), c = random_witt(f, 3, rng);
      const auto x = random_omega(f, 3, 3, rng), y = random_omega(f, 3, 3, rng);
      CHECK(OmegaElement::monomial(b, 2).left_action(a) == OmegaElement::monomial(a * b, 2));
      CHECK(x.left_action(a + c) == x.left_action(a) + x.left_action(c));
      CHECK((x + y).left_action(a) == x.left_action(a) + y.left_action(a));
      CHECK(x.left_action(a) == OmegaElement::constant(a) * x);
    }
  }

  TEST_CASE("canonical form") {
    const FqContext& f = FqContext::of_order(4);
    const CoeffRing r = CoeffRing::fq(f);
    std::map<unsigned, WittFq> terms{{0, WittFq::zero(r, 3)}, {2, WittFq::one(r, 3)}};
    const OmegaElement x(f, 3, terms);
    CHECK(x.terms().size() == 1);
    CHECK(OmegaElement(f, 3, x.terms()) == x);
    CHECK((OmegaElement::V(f, 3) - OmegaElement::V(f, 3)).terms().empty());
    set_omega_v_cap(4);
    CHECK_THROWS_AS(OmegaElement::V(f, 3, 5), PrecisionError);
    CHECK_THROWS_AS(OmegaElement::V(f, 3, 3) * OmegaElement::V(f, 3, 2), PrecisionError);
    set_omega_v_cap(32);
  }

  TEST_CASE("precision unifies to the minimum") {
    const FqContext& f = FqContext::of_order(4);
    const OmegaElement a = OmegaElement::V(f, 3), b = OmegaElement::p(f, 2);
    CHECK((a * b).precision() == 2);
  }

  TEST_CASE("projection to omega_n") {
    const FqContext& f = FqContext::get(2);
    const unsigned n = 3;
    CHECK(OmegaTrunc::project(OmegaElement::V(f, n, n), n).is_zero());
    const OmegaElement x = OmegaElement::one(f, n) + OmegaElement::p(f, n) * OmegaElement::V(f, n, n - 1);
    const OmegaTrunc px = OmegaTrunc::project(x, n);
    CHECK(px.slot(n - 1).is_zero());
    CHECK(px == OmegaTrunc::project(OmegaElement::one(f, n), n));
    CHECK_THROWS_AS(OmegaTrunc::project(x.with_precision(2), n), PrecisionError);
    auto rng = test::rng_for("project");
    for (int t = 0; t < 50; ++t) {
      const auto a = random_omega(f, 3, 4, rng), b = random_omega(f, 3, 4, rng);
      CHECK(OmegaTrunc::project(a + b, 3) == OmegaTrunc::project(a, 3) + OmegaTrunc::project(b, 3));
    }
  }

  TEST_CASE("pi and rho") {
    const FqContext& f = FqContext::get(2);
    const OmegaTrunc one1 = OmegaTrunc::project(OmegaElement::one(f, 1), 1);
    const OmegaTrunc r = one1.rho();
    CHECK(r.level() == 2);
    CHECK(r.slot(0) == wf(f, {0, 1}));
    CHECK(r.slot(1).is_zero());
    for (unsigned n = 2; n <= 3; ++n)
      for (const auto& x : all_omega_trunc(f, n - 1))
        CHECK(x.rho().pi() == x.left_action(WittFq::from_integer(CoeffRing::fq(f), n - 1, 2)));
    std::set<std::string> images;
    const auto all2 = all_omega_trunc(f, 2);
    CHECK(all2.size() == 8);
    for (const auto& x : all2) images.insert(x.pi().to_string());
    CHECK(images.size() == 2);
    std::set<std::string> rho_images;
    for (const auto& x : all2) rho_images.insert(x.rho().to_string());
    CHECK(rho_images.size() == all2.size());
    CHECK_THROWS_AS(one1.pi(), DomainError);
  }

  TEST_CASE("omega_n cardinality") {
    const FqContext& f = FqContext::get(2);
    CHECK(all_omega_trunc(f, 1).size() == 2);
    CHECK(all_omega_trunc(f, 2).size() == 8);
    CHECK(all_omega_trunc(f, 3).size() == 64);
  }

  TEST_CASE("right omega-action on omega_n") {
    auto rng = test::rng_for("right-action");
    const FqContext& f = FqContext::of_order(4);
    const unsigned n = 3;
    for (int t = 0; t < 60; ++t) {
      const OmegaTrunc x = random_omega_trunc(f, n, rng);
      const auto y = random_omega(f, n, 3, rng), z = random_omega(f, n, 3, rng);
      CHECK(x.right_action(OmegaElement::V(f, n, n)).is_zero());
      CHECK(x.right_action(OmegaElement::one(f, n)) == x);
      CHECK(x.right_action(y).right_action(z) == x.right_action(y * z));
      const WittFq a = random_witt(f, n, rng);
      CHECK(x.left_action(a).right_action(y) == x.right_action(y).left_action(a));
      // Independence of the lift: add an element of the ideal before multiplying.
      const OmegaElement junk = OmegaElement::monomial(random_witt(f, n, rng), n) +
                                OmegaElement::monomial(random_witt(f, n, rng).mul_by_p_power(n - 1), 1);
      CHECK(OmegaTrunc::project((x.lift() + junk) * y, n) == x.right_action(y));
    }
  }
}
