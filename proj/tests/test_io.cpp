#include <doctest.h>

#include "support.hpp"
#include "wittlab/errors.hpp"
#include "wittlab/io.hpp"

using namespace wittlab;
using namespace wittlab::io;
using test::wf;

TEST_SUITE("io") {
  TEST_CASE("field and element round trips") {
    for (unsigned q : {2u, 4u, 9u, 8u}) {
      const FqContext& f = FqContext::of_order(q);
      CHECK(&field_from_json(field_to_json(f)) == &f);
      for (const auto& a : f.elements()) CHECK(fq_from_json(f, to_json(a)) == a);
    }
    CHECK_THROWS_AS(field_from_json(json{{"p", 4}, {"q", 4}}), DomainError);
    CHECK_THROWS_AS(field_from_json(json{{"p", "two"}}), ParseError);
  }

  TEST_CASE("Witt and omega round trips") {
    auto rng = test::rng_for("io-roundtrip");
    for (unsigned q : {2u, 4u, 9u}) {
      const FqContext& f = FqContext::of_order(q);
      for (int t = 0; t < 20; ++t) {
        const WittFq x = random_witt(f, 1 + rng() % 4, rng);
        CHECK(witt_from_json(to_json(x)) == x);
        CHECK(witt_from_json(json::parse(to_json(x).dump())) == x);
        const OmegaElement w = random_omega(f, 3, 3, rng);
        CHECK(omega_from_json(to_json(w)) == w);
        const OmegaTrunc tr = random_omega_trunc(f, 3, rng);
        CHECK(omega_trunc_from_json(to_json(tr)) == tr);
      }
    }
  }

  TEST_CASE("module and semilinear round trips") {
    const FqContext& f = FqContext::of_order(4);
    const FiniteChainModule m = FiniteChainModule::direct_sum(f, 3, {1, 2, 3});
    const FiniteChainModule back = module_from_json(to_json(m));
    CHECK(back.invariants() == m.invariants());
    CHECK(back.relations == m.relations);
    const SemilinearMap s{ChainMatrix::identity(f, 3, 3).scaled(p_power(f, 3, 1)), -1};
    const SemilinearMap s2 = semilinear_from_json(to_json(s), f, 3, 3);
    CHECK(s2.matrix == s.matrix);
    CHECK(s2.twist == -1);
  }

  TEST_CASE("W_Q, I and J round trips") {
    const FqContext& f = FqContext::get(2);
    const PAdicApprox x = parse_padic(f, 3, "p^-2*(1,1)");
    CHECK(x.valuation() == -2);
    CHECK((padic_from_json(to_json(x), f) - x).is_zero());
    CHECK(padic_from_json(to_json(PAdicApprox::exact_zero(f)), f).is_exact_zero());
    CHECK(parse_padic(f, 3, "O(p^4)").absolute_precision() == 4);
    const ICheckElement c = parse_icheck(f, 3, "0=p^-1;2=(1,0,1)");
    CHECK(c.lo == 0);
    CHECK(c.hi == 2);
    const ICheckElement c2 = icheck_from_json(to_json(c));
    CHECK((c2 - c).is_zero());
    const JElement j = parse_j(f, 3, "0=p^-1;1=(1)");
    CHECK(j.at(1).is_zero());
    CHECK_FALSE(j.at(0).is_zero());
    CHECK(j_from_json(to_json(j)).at(0).valuation() == -1);
    CHECK_THROWS_AS(parse_icheck(f, 3, "5=1", 0, 2), DomainError);
  }

  TEST_CASE("inline literals") {
    const FqContext& f4 = FqContext::of_order(4);
    CHECK(parse_fq(f4, "[0,1]") == f4.generator());
    CHECK(parse_witt(FqContext::get(2), "(1,0,1)") == wf(FqContext::get(2), {1, 0, 1}));
    CHECK_THROWS_AS(parse_witt(FqContext::get(2), "(1)", 3), DomainError);
    const FqContext& f = FqContext::get(2);
    CHECK(parse_omega(f, 3, "p*V + V^2") == OmegaElement::p(f, 3) * OmegaElement::V(f, 3) + OmegaElement::V(f, 3, 2));
    CHECK(parse_omega(f, 3, to_json(OmegaElement::V(f, 3)).dump()) == OmegaElement::V(f, 3));
    CHECK(parse_laurent(f, "t^-1 + 1").highest_exponent() == 0);
    CHECK(split_top_level("a;(b;c);[d;e]", ';') == std::vector<std::string>{"a", "(b;c)", "[d;e]"});
  }

  TEST_CASE("malformed literals raise ParseError") {
    const FqContext& f = FqContext::get(2);
    CHECK_THROWS_AS(parse_witt(f, "(1,"), ParseError);
    CHECK_THROWS_AS(parse_witt(f, "1,0"), ParseError);
    CHECK_THROWS_AS(parse_omega(f, 3, "V^"), ParseError);
    CHECK_THROWS_AS(parse_omega(f, 3, "Q"), ParseError);
    CHECK_THROWS_AS(parse_padic(f, 3, "p^x"), ParseError);
    CHECK_THROWS_AS(parse_icheck(f, 3, "0"), ParseError);
    CHECK_THROWS_AS(witt_from_json(json::parse("{\"ring\": 3}")), ParseError);
    CHECK_THROWS_AS(parse_omega(f, 3, "{not json"), ParseError);
  }

  TEST_CASE("result encoders") {
    const FqContext& f = FqContext::get(2);
    const auto r = cohomology(f, -1, 2);
    const json j = to_json(r);
    CHECK(j.at("h1") == json::array({1}));
    CHECK(j.at("stabilized") == true);
    const auto w = common_left_multiple(OmegaElement::V(f, 3), OmegaElement::p(f, 3));
    CHECK(to_json(w).at("method") == "inductive");
  }
}
