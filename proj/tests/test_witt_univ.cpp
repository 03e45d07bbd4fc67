#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "support.hpp"
#include "wittlab/errors.hpp"
#include "wittlab/poly_cache.hpp"
#include "wittlab/witt_polys.hpp"

using namespace wittlab;
using wittlab::test::big;

namespace {

struct Vars {
  std::vector<std::string> names;
  unsigned n;
  explicit Vars(unsigned level) : names(witt_variables(level)), n(level) {}
  IntPoly X(unsigned i) const { return IntPoly::variable(names, i); }
  IntPoly Y(unsigned i) const { return IntPoly::variable(names, n + i); }
  IntPoly c(long long v) const { return IntPoly::constant(names, big(v)); }
};

std::filesystem::path fresh_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("wittlab-test-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("witt_univ") {
  TEST_CASE("ghost polynomials") {
    const Vars v1(1), v2(2);
    CHECK(ghost_polys(2, 1) == std::vector<IntPoly>{v1.X(0)});
    CHECK(ghost_polys(2, 2) == std::vector<IntPoly>{v2.X(0), v2.X(0).pow(2) + v2.X(1) * big(2)});
    CHECK(ghost_polys(3, 2) == std::vector<IntPoly>{v2.X(0), v2.X(0).pow(3) + v2.X(1) * big(3)});
    CHECK_THROWS_AS(ghost_polys(4, 2), DomainError);
    CHECK_THROWS_AS(generate_witt_polys(6, 1), DomainError);
  }

  TEST_CASE("sum polynomials") {
    const Vars v1(1), v2(2);
    CHECK(gen_sum_polys(2, 1)[0] == v1.X(0) + v1.Y(0));
    CHECK(gen_sum_polys(2, 2)[1] == v2.X(1) + v2.Y(1) - v2.X(0) * v2.Y(0));
    CHECK(gen_sum_polys(3, 2)[1] ==
          v2.X(1) + v2.Y(1) - v2.X(0).pow(2) * v2.Y(0) - v2.X(0) * v2.Y(0).pow(2));
  }

  TEST_CASE("product, negation and Frobenius polynomials") {
    const Vars v1(1), v2(2);
    CHECK(gen_prod_polys(2, 1)[0] == v1.X(0) * v1.Y(0));
    CHECK(gen_prod_polys(3, 1)[0] == v1.X(0) * v1.Y(0));
    CHECK(gen_prod_polys(2, 2)[1] ==
          v2.X(0).pow(2) * v2.Y(1) + v2.Y(0).pow(2) * v2.X(1) + v2.X(1) * v2.Y(1) * big(2));
    CHECK(gen_neg_polys(3, 1)[0] == -v1.X(0));
    CHECK(gen_neg_polys(2, 1)[0] == -v1.X(0));
    CHECK(gen_neg_polys(2, 2)[1] == -v2.X(1) - v2.X(0).pow(2));
    CHECK(gen_frob_polys(2, 2)[0] == v2.X(0).pow(2) + v2.X(1) * big(2));
    CHECK(gen_frob_polys(3, 2)[0] == v2.X(0).pow(3) + v2.X(1) * big(3));
    CHECK_THROWS_AS(gen_frob_polys(2, 1), DomainError);
  }

  TEST_CASE("F reduces to the component-wise p-th power mod p") {
    for (unsigned p : {2u, 3u}) {
      const auto frob = gen_frob_polys(p, 3);
      for (unsigned k = 0; k < frob.size(); ++k) {
        const ReducedPoly r = reduce_mod_p(frob[k], p);
        REQUIRE(r.terms.size() == 1);
        CHECK(r.terms[0].coeff == 1);
        REQUIRE(r.terms[0].factors.size() == 1);
        CHECK(r.terms[0].factors[0] == std::pair<std::uint32_t, std::uint32_t>{k, p});
      }
    }
  }

  TEST_CASE("ghost identities hold exactly") {
    for (auto [p, top] : {std::pair{2u, 4u}, std::pair{3u, 3u}, std::pair{5u, 2u}}) {
      for (unsigned n = 1; n <= top; ++n) {
        const auto rep = verify_ghost_identities(generate_witt_polys(p, n));
        INFO("p=" << p << " n=" << n);
        CHECK(rep.ok);
      }
    }
  }

  TEST_CASE("ghost identities under an independent integer evaluation") {
    // w_k(S(x, y)) = w_k(x) + w_k(y) at random integer points.
    std::mt19937_64 rng = test::rng_for("ghost-eval");
    std::uniform_int_distribution<int> d(-9, 9);
    const unsigned p = 3, n = 3;
    const auto set = generate_witt_polys(p, n);
    for (int t = 0; t < 20; ++t) {
      std::vector<BigInt> x(n), y(n), xy;
      for (auto& e : x) e = d(rng);
      for (auto& e : y) e = d(rng);
      xy = x;
      xy.insert(xy.end(), y.begin(), y.end());
      std::vector<BigInt> s, pr;
      for (unsigned k = 0; k < n; ++k) {
        s.push_back(set.sum[k].evaluate(xy));
        pr.push_back(set.product[k].evaluate(xy));
      }
      auto ghost = [&](const std::vector<BigInt>& a, unsigned k) {
        BigInt r = 0;
        for (unsigned i = 0; i <= k; ++i) {
          BigInt pi, term;
          mpz_ui_pow_ui(pi.get_mpz_t(), p, i);
          unsigned long e = 1;
          for (unsigned j = i; j < k; ++j) e *= p;
          mpz_pow_ui(term.get_mpz_t(), a[i].get_mpz_t(), e);
          r += pi * term;
        }
        return r;
      };
      for (unsigned k = 0; k < n; ++k) {
        CHECK(ghost(s, k) == ghost(x, k) + ghost(y, k));
        CHECK(ghost(pr, k) == ghost(x, k) * ghost(y, k));
      }
    }
  }

  TEST_CASE("generation is deterministic") {
    CHECK(generate_witt_polys(2, 3) == generate_witt_polys(2, 3));
    CHECK(generate_witt_polys(3, 2) == generate_witt_polys(3, 2));
  }

  TEST_CASE("level cap") {
    CHECK(level_cap(2) == 6);
    CHECK(level_cap(3) == 4);
    CHECK_THROWS_AS(witt_polys(3, 5), DomainError);
  }

  TEST_CASE("cache round trip and absence") {
    const auto dir = fresh_dir("roundtrip");
    const PolyCache cache(dir);
    const auto set = generate_witt_polys(2, 4);
    cache.store(set);
    CHECK(cache.file_for(2, 4).filename() == "witt_p2_n4.wpoly");
    const auto loaded = cache.load(2, 4);
    REQUIRE(loaded.has_value());
    CHECK(*loaded == set);
    CHECK_FALSE(cache.load(2, 9).has_value());
    std::ifstream in(cache.file_for(2, 4));
    std::string header;
    std::getline(in, header);
    CHECK(header == kCacheFormatVersion);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("corrupt cache files are reported and regenerated") {
    const auto dir = fresh_dir("corrupt");
    const PolyCache cache(dir);
    cache.store(generate_witt_polys(2, 2));
    {
      std::ofstream out(cache.file_for(2, 2), std::ios::trunc);
      out << "wpoly/1\nprime 2\nlevel 2\nvariables X0 X1 Y0 Y1\nfamily sum 2\npoly 0 2\n1 1 0\n";
    }
    CHECK_THROWS_AS(cache.load(2, 2), CacheError);
    CHECK(cache.load_or_generate(2, 2) == generate_witt_polys(2, 2));
    CHECK(cache.load(2, 2).has_value());
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("serialization round trip") {
    const auto set = generate_witt_polys(3, 2);
    CHECK(parse_witt_polys(serialize_witt_polys(set), "memory") == set);
    CHECK_THROWS_AS(parse_witt_polys("wpoly/0\n", "memory"), CacheError);
  }

  TEST_CASE("cache directory resolution") {
    CHECK(resolve_cache_dir(std::string("/tmp/x")) == std::filesystem::path("/tmp/x"));
    ::setenv(kCacheEnvVar, "/tmp/from-env", 1);
    CHECK(resolve_cache_dir(std::nullopt) == std::filesystem::path("/tmp/from-env"));
    CHECK(resolve_cache_dir(std::string("/tmp/flag")) == std::filesystem::path("/tmp/flag"));
    ::unsetenv(kCacheEnvVar);
    CHECK(resolve_cache_dir(std::nullopt) == std::filesystem::path("witt-cache"));
  }

  TEST_CASE("concurrent writer and reader processes never see a torn file") {
    const auto dir = fresh_dir("concurrent");
    const PolyCache cache(dir);
    const auto set = generate_witt_polys(2, 3);
    cache.store(set);
    const pid_t child = ::fork();
    REQUIRE(child >= 0);
    if (child == 0) {
      int rc = 0;
      try {
        for (int i = 0; i < 60; ++i) cache.store(set);
      } catch (...) {
        rc = 1;
      }
      ::_exit(rc);
    }
    bool all_equal = true;
    int loads = 0;
    for (int i = 0; i < 60; ++i) {
      try {
        const auto got = cache.load(2, 3);
        if (got) {
          ++loads;
          all_equal = all_equal && *got == set;
        }
      } catch (const CacheError&) {
        all_equal = false;
      }
    }
    int status = 0;
    ::waitpid(child, &status, 0);
    CHECK(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(loads == 60);
    CHECK(all_equal);
    std::filesystem::remove_all(dir);
  }
}
