#include <doctest.h>

#include <set>

#include "support.hpp"
#include "wittlab/errors.hpp"
#include "wittlab/witt_polys.hpp"
#include "wittlab/witt_vector.hpp"

using namespace wittlab;
using test::big;
using test::wf;

namespace {

WittLaurent random_poly_witt(const FqContext& f, unsigned n, std::mt19937_64& rng) {
  std::vector<LaurentPoly> c;
  for (unsigned i = 0; i < n; ++i) {
    LaurentPoly x(f);
    for (int e = 0; e <= 2; ++e) x += LaurentPoly::monomial(f.from_index(rng() % f.order()), e);
    c.push_back(x);
  }
  return WittLaurent(CoeffRing::poly(f), c);
}

}  // namespace

TEST_SUITE("witt_ring") {
  TEST_CASE("basic values over F_2") {
    const FqContext& f = FqContext::get(2);
    CHECK(wf(f, {1, 0}) + wf(f, {1, 0}) == wf(f, {0, 1}));
    for (const auto& x : all_witt_vectors(f, 2)) CHECK(wf(f, {1, 0}) * x == x);
    CHECK(wf(f, {1, 1}).verschiebung() == wf(f, {0, 1, 1}));
    CHECK(WittFq::zero(CoeffRing::fq(f), 2).verschiebung().is_zero());
    CHECK(wf(f, {1, 1, 0}).restrict(2) == wf(f, {1, 1}));
    CHECK(wf(f, {1, 0}).mul_by_p() == wf(f, {0, 1}));
    CHECK(wf(f, {0, 1}).mul_by_p() == wf(f, {0, 0}));
    CHECK(wf(f, {1, 1}) * wf(f, {0, 1}) == wf(f, {0, 1}));
    for (const auto& x : all_witt_vectors(f, 2)) CHECK(x.frobenius() == x);
  }

  TEST_CASE("Teichmuller lift") {
    const FqContext& f4 = FqContext::of_order(4);
    const CoeffRing r4 = CoeffRing::fq(f4);
    for (const FqElem& a : f4.elements())
      for (const FqElem& b : f4.elements())
        CHECK(WittFq::teichmuller(r4, a * b, 3) == WittFq::teichmuller(r4, a, 3) * WittFq::teichmuller(r4, b, 3));
    const FqContext& f2 = FqContext::get(2);
    const CoeffRing r2 = CoeffRing::fq(f2);
    const WittFq one = WittFq::teichmuller(r2, f2.one(), 2);
    CHECK(one + one == wf(f2, {0, 1}));
    CHECK(WittFq::teichmuller(r2, f2.one() + f2.one(), 2) == wf(f2, {0, 0}));
    CHECK(WittFq::teichmuller(r2, f2.zero(), 3).is_zero());
    CHECK(one == WittFq::one(r2, 2));
  }

  TEST_CASE("Frobenius over F_4 and F_2[t]") {
    const FqContext& f4 = FqContext::of_order(4);
    const unsigned g = f4.generator().index(), g2 = (f4.generator() * f4.generator()).index();
    CHECK(wf(f4, {g, g, g}).frobenius() == wf(f4, {g2, g2, g2}));
    const FqContext& f2 = FqContext::get(2);
    const CoeffRing poly = CoeffRing::poly(f2);
    const LaurentPoly t = LaurentPoly::t_power(f2, 1);
    const WittLaurent x(poly, {t, LaurentPoly(f2)});
    const WittLaurent fx = x.frobenius();
    CHECK(fx.level() == 1);
    CHECK(fx[0] == t * t);
    CHECK_THROWS_AS(WittLaurent(poly, {t}).frobenius(), DomainError);
  }

  TEST_CASE("universal-polynomial Frobenius agrees with element-wise sigma on F_q") {
    auto rng = test::rng_for("frob-agree");
    for (unsigned q : {2u, 4u, 9u}) {
      const FqContext& f = FqContext::of_order(q);
      for (int t = 0; t < 100; ++t) {
        const WittFq x = random_witt(f, 4, rng);
        CHECK(x.frobenius_general() == x.frobenius().restrict(3));
      }
    }
  }

  TEST_CASE("Z/p^n oracle") {
    const FqContext& f2 = FqContext::get(2);
    CHECK(iso_zpn(wf(f2, {1, 0})) == 1);
    CHECK(iso_zpn(wf(f2, {0, 1})) == 2);
    for (const auto& x : all_witt_vectors(f2, 3)) CHECK(iso_zpn_inverse(f2, 3, iso_zpn(x)) == x);
    CHECK_THROWS_AS(iso_zpn(wf(FqContext::of_order(4), {1, 0})), DomainError);
    for (unsigned p : {2u, 3u}) {
      const FqContext& f = FqContext::get(p);
      for (unsigned n = 1; n <= 3; ++n) {
        BigInt mod;
        mpz_ui_pow_ui(mod.get_mpz_t(), p, n);
        std::set<std::string> images;
        const auto all = all_witt_vectors(f, n);
        std::size_t mismatches = 0;
        for (const auto& x : all) {
          images.insert(iso_zpn(x).get_str());
          for (const auto& y : all) {
            if (iso_zpn(x + y) != (iso_zpn(x) + iso_zpn(y)) % mod) ++mismatches;
            if (iso_zpn(x * y) != (iso_zpn(x) * iso_zpn(y)) % mod) ++mismatches;
            BigInt d = (iso_zpn(x) - iso_zpn(y)) % mod;
            if (d < 0) d += mod;
            if (iso_zpn(x - y) != d) ++mismatches;
          }
        }
        CHECK(images.size() == all.size());
        CHECK(mismatches == 0);
      }
    }
  }

  TEST_CASE("random W_3(F_3) sums follow the Z/27 oracle") {
    auto rng = test::rng_for("z27");
    const FqContext& f = FqContext::get(3);
    for (int t = 0; t < 200; ++t) {
      const WittFq x = random_witt(f, 3, rng), y = random_witt(f, 3, rng);
      CHECK(iso_zpn(x + y) == (iso_zpn(x) + iso_zpn(y)) % 27);
    }
  }

  TEST_CASE("ring axioms on random triples") {
    auto rng = test::rng_for("ring-axioms");
    for (unsigned q : {2u, 4u, 9u}) {
      const FqContext& f = FqContext::of_order(q);
      for (unsigned n = 1; n <= 4; ++n) {
        for (int t = 0; t < 30; ++t) {
          const WittFq a = random_witt(f, n, rng), b = random_witt(f, n, rng), c = random_witt(f, n, rng);
          CHECK((a + b) + c == a + (b + c));
          CHECK((a * b) * c == a * (b * c));
          CHECK(a * (b + c) == a * b + a * c);
          CHECK(a * b == b * a);
          CHECK((a - a).is_zero());
          CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
          if (n + 1 <= level_cap(f.characteristic()))
            CHECK((a + b).verschiebung() == a.verschiebung() + b.verschiebung());
          if (n >= 2) CHECK((a * b).restrict(n - 1) == a.restrict(n - 1) * b.restrict(n - 1));
        }
      }
    }
    const FqContext& f2 = FqContext::get(2);
    for (unsigned n = 1; n <= 3; ++n) {
      for (int t = 0; t < 10; ++t) {
        const auto a = random_poly_witt(f2, n, rng), b = random_poly_witt(f2, n, rng), c = random_poly_witt(f2, n, rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + (-a)).is_zero());
      }
    }
  }

  TEST_CASE("FV = VF = p and V(F(a)b) = aV(b)") {
    auto rng = test::rng_for("fv");
    for (unsigned q : {2u, 4u, 9u}) {
      const FqContext& f = FqContext::of_order(q);
      for (unsigned n = 1; n <= 4; ++n) {
        for (int t = 0; t < 25; ++t) {
          const WittFq x = random_witt(f, n, rng), b = random_witt(f, n, rng);
          CHECK(x.verschiebung().frobenius().restrict(n) == x.mul_by_p());
          CHECK(x.frobenius().verschiebung().restrict(n) == x.mul_by_p());
          if (n + 1 <= level_cap(f.characteristic())) {
            CHECK(x.frobenius().verschiebung() == x.zero_pad(n + 1).mul_by_p());
            CHECK((x.frobenius() * b).verschiebung() == x.zero_pad(n + 1) * b.verschiebung());
          }
          if (n >= 2) CHECK((x.frobenius().restrict(n - 1) * b.restrict(n - 1)).verschiebung() == x * b.restrict(n - 1).verschiebung());
          if (n >= 2) CHECK(x.verschiebung().restrict(n) == x.restrict(n - 1).verschiebung());
        }
      }
    }
  }

  TEST_CASE("p-multiplication two ways over F_9") {
    auto rng = test::rng_for("p-mult");
    const FqContext& f = FqContext::of_order(9);
    const CoeffRing r = CoeffRing::fq(f);
    for (int t = 0; t < 100; ++t) {
      const WittFq x = random_witt(f, 3, rng);
      CHECK(x.mul_by_p() == x * WittFq::from_integer(r, 3, big(3)));
      CHECK(x.mul_by_p() == x.frobenius().verschiebung().restrict(3));
    }
  }

  TEST_CASE("exactness of W_m -> W_{m+n} -> W_n") {
    for (unsigned q : {2u, 3u, 4u}) {
      const FqContext& f = FqContext::of_order(q);
      for (unsigned m = 1; m <= 2; ++m) {
        for (unsigned n = 1; n <= 2; ++n) {
          std::set<std::vector<std::uint32_t>> image, kernel;
          auto key = [](const WittFq& x) {
            std::vector<std::uint32_t> k;
            for (const auto& c : x.components()) k.push_back(c.index());
            return k;
          };
          for (const auto& x : all_witt_vectors(f, m)) {
            WittFq y = x;
            for (unsigned i = 0; i < n; ++i) y = y.verschiebung();
            image.insert(key(y));
          }
          std::set<std::vector<std::uint32_t>> r_image;
          for (const auto& z : all_witt_vectors(f, m + n)) {
            if (z.restrict(n).is_zero()) kernel.insert(key(z));
            r_image.insert(key(z.restrict(n)));
          }
          CHECK(image == kernel);
          CHECK(image.size() == all_witt_vectors(f, m).size());
          CHECK(r_image.size() == all_witt_vectors(f, n).size());
        }
      }
    }
  }

  TEST_CASE("level and ring mismatches are rejected") {
    const FqContext& f = FqContext::get(2);
    CHECK_THROWS_AS(wf(f, {1, 0}) + wf(f, {1, 0, 0}), DomainError);
    CHECK_THROWS_AS(wf(f, {1, 0}) * wf(FqContext::of_order(4), {1, 0}), DomainError);
    CHECK_THROWS_AS(wf(f, {1, 0}).restrict(3), DomainError);
    CHECK_THROWS_AS(wf(f, {1, 0}).restrict(0), DomainError);
    CHECK_THROWS_AS(WittLaurent(CoeffRing::poly(f), {LaurentPoly::t_power(f, -1)}), DomainError);
  }
}
