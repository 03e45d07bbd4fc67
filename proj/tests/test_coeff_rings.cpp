#include <doctest.h>

#include "support.hpp"
#include "wittlab/errors.hpp"
#include "wittlab/finite_field.hpp"
#include "wittlab/laurent.hpp"

using namespace wittlab;

TEST_SUITE("coeff_rings") {
  TEST_CASE("Frobenius on F_q") {
    const FqContext& f4 = FqContext::of_order(4);
    const FqElem g = f4.generator();
    CHECK(g.frobenius() == g * g);
    const FqContext& f16 = FqContext::of_order(16);
    for (const FqElem& x : f16.elements()) CHECK(x.frobenius().frobenius_inverse() == x);
    for (const FqElem& x : FqContext::get(2).elements()) CHECK(x.frobenius() == x);
    for (const FqElem& x : FqContext::of_order(9).elements()) CHECK(x.frobenius_power(2) == x);
  }

  TEST_CASE("field axioms and sigma homomorphism, exhaustive for q <= 16") {
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u}) {
      const FqContext& f = FqContext::of_order(q);
      const auto els = f.elements();
      REQUIRE(els.size() == q);
      bool ok = true;
      for (const FqElem& a : els) {
        if (!a.is_zero()) ok = ok && (a * a.inverse()).is_one();
        ok = ok && (a + (-a)).is_zero() && (a * f.one() == a);
        for (const FqElem& b : els) {
          ok = ok && a * b == b * a && a + b == b + a;
          ok = ok && (a + b).frobenius() == a.frobenius() + b.frobenius();
          ok = ok && (a * b).frobenius() == a.frobenius() * b.frobenius();
          for (const FqElem& c : els) ok = ok && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c;
        }
      }
      INFO("q = " << q);
      CHECK(ok);
    }
  }

  TEST_CASE("built-in and user moduli") {
    CHECK(FqContext::of_order(4).modulus() == std::vector<unsigned>{1, 1, 1});
    CHECK(FqContext::of_order(9).modulus() == std::vector<unsigned>{2, 2, 1});
    CHECK(is_irreducible(2, {1, 1, 0, 1}));
    CHECK_FALSE(is_irreducible(2, {1, 0, 1}));
    CHECK_THROWS_AS(FqContext::with_modulus(2, {1, 0, 1}), DomainError);
    const FqContext& alt8 = FqContext::with_modulus(2, {1, 0, 1, 1});
    CHECK(alt8.order() == 8);
    CHECK_THROWS_AS(FqContext::of_order(6), DomainError);
  }

  TEST_CASE("Laurent polynomial arithmetic") {
    const FqContext& f = FqContext::get(2);
    const LaurentPoly t = LaurentPoly::t_power(f, 1);
    const LaurentPoly one = LaurentPoly::constant(f.one());
    CHECK((t + one).pth_power() == t * t + one);
    CHECK((t + one) * (t + one) == t * t + one);
    CHECK((t * LaurentPoly::t_power(f, -1)).is_one());
    const LaurentPoly x = t.pow(3) + t.pow(2);
    CHECK(x.divisible_by_t_power(2));
    CHECK_FALSE(x.divisible_by_t_power(4));
    CHECK(x.invert_variable() == LaurentPoly::t_power(f, -3) + LaurentPoly::t_power(f, -2));
    CHECK_THROWS_AS(t + LaurentPoly::t_power(FqContext::get(3), 1), DomainError);
  }

  TEST_CASE("Laurent p-th power distributes over random sums") {
    auto rng = test::rng_for("laurent-pth");
    const FqContext& f = FqContext::of_order(9);
    for (int t = 0; t < 50; ++t) {
      auto rnd = [&] {
        LaurentPoly r(f);
        for (int e = -3; e <= 3; ++e) r += LaurentPoly::monomial(f.from_index(rng() % 9), e);
        return r;
      };
      const LaurentPoly a = rnd(), b = rnd();
      CHECK((a + b).pth_power() == a.pth_power() + b.pth_power());
      CHECK((a * b).pth_power() == a.pth_power() * b.pth_power());
      CHECK(a.pth_power() == a.pow(3));
    }
  }
}
