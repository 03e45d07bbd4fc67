#include "wittlab/witt_polys.hpp"

#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "wittlab/errors.hpp"
#include "wittlab/poly_cache.hpp"

namespace wittlab {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

void require_prime_level(unsigned p, unsigned n) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (n < 1) throw DomainError("level must be >= 1");
  if (n > level_cap(p))
    throw DomainError("level " + std::to_string(n) + " exceeds configured cap " + std::to_string(level_cap(p)) +
                      " for p = " + std::to_string(p));
}

BigInt ipow(unsigned base, unsigned e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

// w_k in variable block `offset` (0 for X, n for Y) of the 2n-variable list.
IntPoly ghost_block(unsigned p, unsigned n, unsigned k, unsigned offset) {
  const auto vars = witt_variables(n);
  IntPoly w(vars);
  for (unsigned i = 0; i <= k; ++i) {
    Exponents e(vars.size(), 0);
    BigInt pk = ipow(p, k - i);
    e[offset + i] = static_cast<std::uint32_t>(pk.get_ui());
    w.add_term(e, ipow(p, i));
  }
  return w;
}

// Solves p^k Z_k = target(k) - sum_{i<k} p^i Z_i^{p^{k-i}} for k < count.
std::vector<IntPoly> solve_ghost_recursion(unsigned p, unsigned n, unsigned count,
                                           const std::function<IntPoly(unsigned)>& target) {
  std::vector<IntPoly> z;
  // frob_pow[i][j] = Z_i^{p^j}
  std::vector<std::vector<IntPoly>> frob_pow;
  for (unsigned k = 0; k < count; ++k) {
    IntPoly rhs = target(k);
    for (unsigned i = 0; i < k; ++i) {
      auto& tower = frob_pow[i];
      while (tower.size() <= k - i) tower.push_back(tower.back().pow(p));
      rhs -= tower[k - i] * ipow(p, i);
    }
    IntPoly zk = rhs.divide_exact(ipow(p, k));
    frob_pow.push_back({zk});
    z.push_back(std::move(zk));
  }
  (void)n;
  return z;
}

}  // namespace

std::vector<IntPoly> ghost_polys(unsigned p, unsigned n) {
  require_prime_level(p, n);
  std::vector<IntPoly> w;
  for (unsigned k = 0; k < n; ++k) w.push_back(ghost_block(p, n, k, 0));
  return w;
}

std::vector<IntPoly> gen_sum_polys(unsigned p, unsigned n) {
  require_prime_level(p, n);
  return solve_ghost_recursion(p, n, n, [&](unsigned k) { return ghost_block(p, n, k, 0) + ghost_block(p, n, k, n); });
}

std::vector<IntPoly> gen_prod_polys(unsigned p, unsigned n) {
  require_prime_level(p, n);
  return solve_ghost_recursion(p, n, n, [&](unsigned k) { return ghost_block(p, n, k, 0) * ghost_block(p, n, k, n); });
}

std::vector<IntPoly> gen_neg_polys(unsigned p, unsigned n) {
  require_prime_level(p, n);
  return solve_ghost_recursion(p, n, n, [&](unsigned k) { return -ghost_block(p, n, k, 0); });
}

std::vector<IntPoly> gen_frob_polys(unsigned p, unsigned n) {
  require_prime_level(p, n);
  if (n < 2) throw DomainError("Frobenius polynomials need level >= 2");
  return solve_ghost_recursion(p, n, n - 1, [&](unsigned k) { return ghost_block(p, n, k + 1, 0); });
}

WittPolySet generate_witt_polys(unsigned p, unsigned n) {
  WittPolySet s;
  s.prime = p;
  s.level = n;
  s.ghost = ghost_polys(p, n);
  s.sum = gen_sum_polys(p, n);
  s.product = gen_prod_polys(p, n);
  s.negation = gen_neg_polys(p, n);
  if (n >= 2) s.frobenius = gen_frob_polys(p, n);
  return s;
}

GhostIdentityReport verify_ghost_identities(const WittPolySet& set) {
  GhostIdentityReport report;
  const unsigned p = set.prime;
  const unsigned n = set.level;
  const auto vars = witt_variables(n);

  auto fail = [&](const std::string& what, unsigned k) {
    report.ok = false;
    report.failures.push_back(what + " at k=" + std::to_string(k));
  };

  // Substitution list: X_i -> family[i] (zero past its length), Y_i -> Y_i.
  auto substitution = [&](const std::vector<IntPoly>& family) {
    std::vector<IntPoly> subs;
    for (unsigned i = 0; i < n; ++i) subs.push_back(i < family.size() ? family[i] : IntPoly(vars));
    for (unsigned i = 0; i < n; ++i) subs.push_back(IntPoly::variable(vars, n + i));
    return subs;
  };

  if (set.ghost.size() != n || set.sum.size() != n || set.product.size() != n || set.negation.size() != n ||
      set.frobenius.size() != (n >= 2 ? n - 1 : 0)) {
    report.ok = false;
    report.failures.push_back("family sizes do not match level");
    return report;
  }

  const auto sum_subs = substitution(set.sum);
  const auto prod_subs = substitution(set.product);
  const auto neg_subs = substitution(set.negation);
  const auto frob_subs = substitution(set.frobenius);
  for (unsigned k = 0; k < n; ++k) {
    const IntPoly wx = ghost_block(p, n, k, 0);
    const IntPoly wy = ghost_block(p, n, k, n);
    if (!(set.ghost[k] == wx)) fail("ghost polynomial", k);
    if (!(wx.compose(sum_subs) == wx + wy)) fail("w(S) = w(X) + w(Y)", k);
    if (!(wx.compose(prod_subs) == wx * wy)) fail("w(P) = w(X) w(Y)", k);
    if (!(wx.compose(neg_subs) == -wx)) fail("w(N) = -w(X)", k);
    if (k + 1 < n && !(wx.compose(frob_subs) == ghost_block(p, n, k + 1, 0))) fail("w(F) = w_{k+1}(X)", k);
  }
  return report;
}

namespace {

std::mutex& caps_mutex() {
  static std::mutex m;
  return m;
}

std::map<unsigned, unsigned>& caps() {
  static std::map<unsigned, unsigned> c;
  return c;
}

}  // namespace

unsigned level_cap(unsigned p) {
  {
    std::lock_guard lock(caps_mutex());
    auto it = caps().find(p);
    if (it != caps().end()) return it->second;
  }
  if (p == 2) return 6;
  if (p == 3) return 4;
  if (p == 5) return 3;
  return 2;
}

void set_level_cap(unsigned p, unsigned n) {
  std::lock_guard lock(caps_mutex());
  caps()[p] = n;
}

ReducedPoly reduce_mod_p(const IntPoly& poly, unsigned p) {
  ReducedPoly r;
  BigInt bp = p;
  for (const auto& [e, c] : poly.terms()) {
    BigInt m = c % bp;
    if (m < 0) m += bp;
    if (m == 0) continue;
    ReducedTerm t;
    t.coeff = static_cast<std::uint32_t>(m.get_ui());
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v] != 0) t.factors.emplace_back(static_cast<std::uint32_t>(v), e[v]);
    r.terms.push_back(std::move(t));
  }
  return r;
}

// The registry memoizes generated sets for the lifetime of the process.
// Entries are never removed, so returned references stay valid.
namespace {

struct Registry {
  std::mutex mutex;
  std::map<std::pair<unsigned, unsigned>, std::unique_ptr<WittPolySet>> sets;
  std::map<std::pair<unsigned, unsigned>, std::unique_ptr<ReducedWittPolys>> reduced;
  std::optional<std::string> cache_dir;
};

Registry& registry() {
  static Registry r;
  return r;
}

const WittPolySet* find_covering(Registry& reg, unsigned p, unsigned n) {
  auto it = reg.sets.lower_bound({p, n});
  if (it != reg.sets.end() && it->first.first == p) return it->second.get();
  return nullptr;
}

}  // namespace

void set_witt_cache_dir(const std::string& dir) {
  std::lock_guard lock(registry().mutex);
  registry().cache_dir = dir;
}

const WittPolySet& witt_polys(unsigned p, unsigned n) {
  require_prime_level(p, n);
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  if (const auto* s = find_covering(reg, p, n)) return *s;
  WittPolySet set;
  if (reg.cache_dir) {
    set = PolyCache(*reg.cache_dir).load_or_generate(p, n);
  } else {
    set = generate_witt_polys(p, n);
  }
  auto& slot = reg.sets[{p, n}];
  slot = std::make_unique<WittPolySet>(std::move(set));
  return *slot;
}

const ReducedWittPolys& reduced_witt_polys(unsigned p, unsigned n) {
  const WittPolySet& set = witt_polys(p, n);
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  auto key = std::make_pair(p, set.level);
  auto it = reg.reduced.find(key);
  if (it != reg.reduced.end()) return *it->second;
  auto r = std::make_unique<ReducedWittPolys>();
  r->prime = p;
  r->level = set.level;
  for (const auto& f : set.sum) r->sum.push_back(reduce_mod_p(f, p));
  for (const auto& f : set.product) r->product.push_back(reduce_mod_p(f, p));
  for (const auto& f : set.negation) r->negation.push_back(reduce_mod_p(f, p));
  for (const auto& f : set.frobenius) r->frobenius.push_back(reduce_mod_p(f, p));
  auto& slot = reg.reduced[key];
  slot = std::move(r);
  return *slot;
}

}  // namespace wittlab
