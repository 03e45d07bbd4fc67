#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "wittlab/cech.hpp"
#include "wittlab/errors.hpp"

using namespace wittlab;

namespace {

std::int64_t ipow(std::int64_t p, unsigned k) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r *= p;
  return r;
}

// One W_{n-k} summand per monomial V^k[t^j] (p | j only for k = 0) of
// degree j in [0, p^k d] for H^0 and in (p^k d, 0) for H^1.
std::pair<std::vector<unsigned>, std::vector<unsigned>> closed_form(unsigned p, std::int64_t d, unsigned n) {
  std::vector<unsigned> h0, h1;
  for (unsigned k = 0; k < n; ++k) {
    const std::int64_t top = ipow(p, k) * d;
    for (std::int64_t j = std::min<std::int64_t>(top, 0); j <= std::max<std::int64_t>(top, 0); ++j) {
      if (k >= 1 && j % static_cast<std::int64_t>(p) == 0) continue;
      if (j >= 0 && j <= top) h0.push_back(n - k);
      if (j > top && j < 0) h1.push_back(n - k);
    }
  }
  std::sort(h0.begin(), h0.end());
  std::sort(h1.begin(), h1.end());
  return {h0, h1};
}

}  // namespace

TEST_SUITE("cech_p1") {
  TEST_CASE("documented examples") {
    const FqContext& f = FqContext::get(2);
    const auto a = cohomology(f, -1, 2);
    CHECK(a.stabilized);
    CHECK(a.h0.empty());
    CHECK(a.h1 == std::vector<unsigned>{1});
    const auto b = cohomology(f, -2, 2);
    CHECK(b.h1 == std::vector<unsigned>{1, 1, 2});
    const auto c = cohomology(f, 1, 2);
    CHECK(c.h0 == std::vector<unsigned>{1, 2, 2});
    CHECK(c.h1.empty());
  }

  TEST_CASE("classical line bundle counts at n = 1") {
    for (unsigned q : {2u, 3u, 4u}) {
      const FqContext& f = FqContext::of_order(q);
      for (int d = -6; d <= 6; ++d) {
        const auto r = cohomology(f, d, 1);
        INFO("q=" << q << " d=" << d);
        CHECK(r.log_h0() == static_cast<std::size_t>(std::max(0, d + 1)));
        CHECK(r.log_h1() == static_cast<std::size_t>(std::max(0, -d - 1)));
      }
    }
  }

  TEST_CASE("closed-form oracle for |d| <= 4, n <= 3") {
    for (unsigned q : {2u, 4u}) {
      const FqContext& f = FqContext::of_order(q);
      for (unsigned n = 1; n <= 3; ++n)
        for (int d = -4; d <= 4; ++d) {
          const auto r = cohomology(f, d, n);
          const auto [h0, h1] = closed_form(2, d, n);
          INFO("q=" << q << " d=" << d << " n=" << n);
          CHECK(r.stabilized);
          CHECK(r.h0 == h0);
          CHECK(r.h1 == h1);
        }
    }
    const auto r = cohomology(FqContext::get(3), -2, 2);
    CHECK(r.h1 == closed_form(3, -2, 2).second);
  }

  TEST_CASE("level growth and Euler characteristic") {
    const FqContext& f = FqContext::get(2);
    for (int d = -3; d <= 3; ++d) {
      std::size_t prev0 = 0, prev1 = 0;
      for (unsigned n = 1; n <= 3; ++n) {
        const auto r = cohomology(f, d, n);
        CHECK(r.log_h0() >= prev0);
        CHECK(r.log_h1() >= prev1);
        prev0 = r.log_h0();
        prev1 = r.log_h1();
        // chi = n (d + 1) + sum_{k >= 1} (n - k) p^{k-1} (p - 1) d, linear in d
        long long chi = static_cast<long long>(n) * (d + 1);
        for (unsigned k = 1; k < n; ++k) chi += static_cast<long long>(n - k) * ipow(2, k - 1) * d;
        CHECK(static_cast<long long>(r.log_h0()) - static_cast<long long>(r.log_h1()) == chi);
      }
    }
  }

  TEST_CASE("window and generator cap") {
    const FqContext& f = FqContext::get(2);
    const auto r = cohomology(f, -2, 2);
    CHECK(r.window >= minimal_window(2, -2, 2));
    CHECK(r.windows_tried.size() >= 3);
    CHECK_THROWS_AS(cohomology(FqContext::get(2), -400, 3), PrecisionError);
  }

  TEST_CASE("decompose and recompose") {
    auto rng = test::rng_for("decompose");
    const FqContext& f = FqContext::of_order(4);
    for (int t = 0; t < 40; ++t) {
      const unsigned n = 1 + rng() % 3;
      WittLaurent x = WittLaurent::zero(CoeffRing::laurent(f), n);
      for (int s = 0; s < 4; ++s) {
        const unsigned k = rng() % n;
        std::int64_t j = static_cast<std::int64_t>(rng() % 11) - 5;
        if (k >= 1 && j % 2 == 0) ++j;
        x = x + generator_element(f, n, k, j);
      }
      CHECK(recompose(f, n, decompose(x)) == x);
    }
    const auto coords = decompose(generator_element(f, 2, 1, 3));
    REQUIRE(coords.size() == 1);
    CHECK(coords.begin()->first.k == 1);
    CHECK(coords.begin()->first.j == 3);
  }

  TEST_CASE("operator identities on cohomology") {
    const FqContext& f = FqContext::get(2);
    for (int d : {-2, -1, 1}) {
      for (unsigned n : {1u, 2u}) {
        const std::int64_t w = cohomology(f, 2 * d, n + 1).window;
        const CechComplex src = CechComplex::build(f, 2 * d, n, w);
        const CechComplex mid = CechComplex::build(f, d, n + 1, w);
        const CechComplex tgt = CechComplex::build(f, 2 * d, n, 2 * w);
        for (unsigned deg : {0u, 1u}) {
          INFO("d=" << d << " n=" << n << " degree " << deg);
          // FV = p
          const InducedMap fv = compose(induced_map(CechOp::F, mid, tgt, deg), induced_map(CechOp::V, src, mid, deg));
          CHECK(maps_agree(fv, induced_map(CechOp::P, src, tgt, deg)));
          // pR = Rp and R is onto
          const CechComplex top = CechComplex::build(f, d, n + 1, w), low = CechComplex::build(f, d, n, w);
          const InducedMap r = induced_map(CechOp::R, top, low, deg);
          CHECK(maps_agree(compose(induced_map(CechOp::P, low, low, deg), r),
                           compose(r, induced_map(CechOp::P, top, top, deg))));
          CHECK(is_surjective(r));
        }
      }
    }
    CHECK_THROWS_AS(induced_map(CechOp::R, CechComplex::build(f, 1, 2, 4), CechComplex::build(f, 2, 1, 4), 0),
                    DomainError);
  }

  TEST_CASE("membership of V-shifted sections") {
    const FqContext& f = FqContext::get(2);
    for (int d = 0; d <= 3; ++d)
      for (int j = 0; j <= d; ++j) {
        const auto m = v_membership_test(generator_element(f, 1, 0, j), d);
        CHECK(m.input_valid);
        CHECK(m.shifted_valid);
      }
    const auto neg = v_membership_test(generator_element(f, 1, 0, -1), -1);
    CHECK(neg.input_valid);
    CHECK_FALSE(neg.shifted_valid);
    const auto z = v_membership_test(WittLaurent::zero(CoeffRing::laurent(f), 2), -1);
    CHECK(z.input_valid);
    CHECK(z.shifted_valid);
  }

  TEST_CASE("negative twists have no global sections") {
    for (unsigned s = 1; s <= 3; ++s) {
      const auto rep = tanaka_probe(FqContext::get(2), s, 2);
      CHECK(rep.h0_vanishes);
      REQUIRE(rep.levels.size() == 2);
      for (const auto& lv : rep.levels) {
        CHECK(lv.h0.empty());
        CHECK(lv.h1 == closed_form(2, -static_cast<int>(s), lv.n).second);
        CHECK(lv.h1_twisted == closed_form(2, -2 * static_cast<int>(s), lv.n).second);
      }
    }
    CHECK_THROWS_AS(tanaka_probe(FqContext::get(2), 0, 2), DomainError);
  }
}
