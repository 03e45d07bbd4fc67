#include "wittlab/ore.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "wittlab/chain.hpp"
#include "wittlab/errors.hpp"

namespace wittlab {

PAdicApprox solve_in_wq(const PAdicApprox& alpha, const PAdicApprox& d) {
  if (alpha.is_zero()) throw DomainError("solve_in_wq: alpha must be nonzero");
  return d / alpha;
}

// ---------------------------------------------------------------------------
// ICheckElement / JElement

ICheckElement::ICheckElement(const FqContext& f, int lo_, int hi_, bool finite)
    : field(&f), lo(lo_), hi(hi_), finite_tail(finite) {
  if (hi < lo) hi = lo;
}

ICheckElement ICheckElement::from_omega(const OmegaElement& x) {
  const int top = x.is_zero() ? 0 : static_cast<int>(x.degree());
  ICheckElement r(x.field(), 0, top, true);
  for (const auto& [i, a] : x.terms()) r.set(static_cast<int>(i), PAdicApprox::from_witt(a));
  return r;
}

PAdicApprox ICheckElement::at(int i) const {
  if (i > hi && !finite_tail) throw PrecisionError("slot " + std::to_string(i) + " lies beyond the known window");
  auto it = slots.find(i);
  return it == slots.end() ? PAdicApprox::exact_zero(*field) : it->second;
}

void ICheckElement::set(int i, const PAdicApprox& x) {
  if (x.is_exact_zero())
    slots.erase(i);
  else
    slots[i] = x;
  lo = std::min(lo, i);
  hi = std::max(hi, i);
}

bool ICheckElement::is_zero() const {
  return std::all_of(slots.begin(), slots.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

std::int64_t ICheckElement::precision_floor() const {
  std::int64_t r = PAdicApprox::kExactPrecision;
  for (const auto& [i, x] : slots) r = std::min(r, x.absolute_precision());
  return r;
}

namespace {

// Known window top of a + b.
int combined_top(const ICheckElement& a, const ICheckElement& b, bool& finite) {
  finite = a.finite_tail && b.finite_tail;
  if (finite) return std::max(a.hi, b.hi);
  if (!a.finite_tail && !b.finite_tail) return std::min(a.hi, b.hi);
  return a.finite_tail ? b.hi : a.hi;
}

}  // namespace

ICheckElement ICheckElement::operator+(const ICheckElement& o) const {
  if (field != o.field) throw DomainError("ICheckElement over different fields");
  bool finite = true;
  const int top = combined_top(*this, o, finite);
  ICheckElement r(*field, std::min(lo, o.lo), top, finite);
  r.truncated = truncated || o.truncated;
  for (int i = r.lo; i <= top; ++i) {
    const bool have = slots.count(i) || o.slots.count(i);
    if (have) r.set(i, at(i) + o.at(i));
  }
  r.hi = top;
  return r;
}

ICheckElement ICheckElement::operator-(const ICheckElement& o) const {
  ICheckElement neg = o;
  for (auto& [i, x] : neg.slots) x = -x;
  return *this + neg;
}

std::string ICheckElement::to_string() const {
  std::ostringstream os;
  os << "[" << lo << ".." << hi << (finite_tail ? "" : "+?") << "]{";
  bool first = true;
  for (const auto& [i, x] : slots) {
    if (!first) os << ", ";
    first = false;
    os << i << ": " << x.to_string();
  }
  os << "}";
  return os.str();
}

JElement::JElement(const FqContext& f, int lo_, int hi_) : field(&f), lo(lo_), hi(std::max(lo_, hi_)) {}

PAdicApprox JElement::at(int i) const {
  auto it = slots.find(i);
  return it == slots.end() ? PAdicApprox::exact_zero(*field) : it->second;
}

void JElement::set(int i, const PAdicApprox& x) {
  const PAdicApprox v = i >= 0 ? x.principal_part() : x;
  if (v.is_exact_zero())
    slots.erase(i);
  else
    slots[i] = v;
  lo = std::min(lo, i);
  hi = std::max(hi, i);
}

bool JElement::is_zero() const {
  return std::all_of(slots.begin(), slots.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

std::string JElement::to_string() const {
  std::ostringstream os;
  os << "[" << lo << ".." << hi << "]{";
  bool first = true;
  for (const auto& [i, x] : slots) {
    if (!first) os << ", ";
    first = false;
    os << i << ": " << x.to_string() << (i >= 0 ? " mod W" : "");
  }
  os << "}";
  return os.str();
}

JElement to_j(const ICheckElement& x) {
  JElement r(*x.field, x.lo, x.hi);
  for (const auto& [i, v] : x.slots) r.set(i, v);
  return r;
}

// ---------------------------------------------------------------------------
// Left multiplication and Baer extension

namespace {

std::vector<std::pair<int, PAdicApprox>> padic_terms(const OmegaElement& alpha) {
  std::vector<std::pair<int, PAdicApprox>> out;
  for (const auto& [i, a] : alpha.terms()) out.emplace_back(static_cast<int>(i), PAdicApprox::from_witt(a));
  return out;
}

void check_deadline(const Deadline& d) {
  if (d && std::chrono::steady_clock::now() > *d) throw PrecisionError("deadline exceeded");
}

}  // namespace

ICheckElement left_mul(const OmegaElement& alpha, const ICheckElement& c, bool allow_truncation) {
  if (&alpha.field() != c.field) throw DomainError("left_mul: field mismatch");
  if (alpha.is_zero()) return ICheckElement(*c.field, std::min(0, c.lo), std::min(0, c.lo), true);
  if (!c.finite_tail && !allow_truncation)
    throw PrecisionError("left_mul: product window overflows the known window of c");
  const auto terms = padic_terms(alpha);
  const int n_min = static_cast<int>(alpha.lowest_exponent());
  const int deg = static_cast<int>(alpha.degree());
  const int first = c.lo + n_min;
  const int top = c.finite_tail ? c.hi + deg : c.hi + n_min;
  ICheckElement r(*c.field, std::min(0, first), top, c.finite_tail);
  r.truncated = c.truncated || !c.finite_tail;
  for (int k = first; k <= top; ++k) {
    PAdicApprox acc = PAdicApprox::exact_zero(*c.field);
    bool any = false;
    for (const auto& [i, ai] : terms) {
      const int j = k - i;
      if (j < c.lo || j > c.hi) continue;
      auto it = c.slots.find(j);
      if (it == c.slots.end()) continue;
      acc = acc + ai * it->second.frobenius_power(-static_cast<long long>(i));
      any = true;
    }
    if (any) r.set(k, acc);
  }
  r.hi = top;
  return r;
}

BaerResult baer_extend(const OmegaElement& alpha, const ICheckElement& a, std::optional<int> hi) {
  if (alpha.is_zero()) throw DomainError("baer_extend: alpha must be nonzero");
  if (&alpha.field() != a.field) throw DomainError("baer_extend: field mismatch");
  int top = a.hi;
  if (hi && *hi > a.hi) {
    if (!a.finite_tail) throw PrecisionError("baer_extend: window of a ends at " + std::to_string(a.hi));
    top = *hi;
  }
  const auto terms = padic_terms(alpha);
  const int n = static_cast<int>(alpha.lowest_exponent());
  const PAdicApprox lead = PAdicApprox::from_witt(alpha.coefficient(static_cast<unsigned>(n)));
  if (lead.is_zero()) throw InternalError("baer_extend: vanishing lowest coefficient");

  BaerResult res;
  res.c = ICheckElement(*a.field, a.lo - n, top - n, false);
  res.c.truncated = true;
  for (int k = a.lo; k <= top; ++k) {
    PAdicApprox num = a.at(k);
    for (const auto& [i, ai] : terms) {
      if (i == n) continue;
      const int j = k - i;
      if (j < res.c.lo) continue;
      auto it = res.c.slots.find(j);
      if (it == res.c.slots.end()) continue;
      num = num - ai * it->second.frobenius_power(-static_cast<long long>(i));
    }
    if (num.is_exact_zero()) continue;
    res.c.set(k - n, solve_in_wq(lead, num).frobenius_power(n));
  }
  res.c.hi = top - n;

  const ICheckElement prod = left_mul(alpha, res.c, true);
  res.residual = ICheckElement(*a.field, a.lo, top, true);
  for (int k = a.lo; k <= top; ++k) {
    const PAdicApprox d = prod.at(k) - a.at(k);
    if (!d.is_zero())
      throw PrecisionError("baer_extend: residual " + d.to_string() + " at slot " + std::to_string(k));
    res.residual.set(k, d);
  }
  res.residual.hi = top;
  res.precision_floor = res.c.precision_floor();
  return res;
}

// ---------------------------------------------------------------------------
// Common left multiples

namespace {

OmegaElement make_omega(const FqContext& f, unsigned m, const std::map<unsigned, WittFq>& t) {
  return OmegaElement(f, m, t);
}

unsigned min_coefficient_valuation(const OmegaElement& x) {
  unsigned v = std::numeric_limits<unsigned>::max();
  for (const auto& [i, a] : x.terms()) v = std::min(v, a.valuation());
  return v;
}

std::optional<ClmWitness> ore_linear(const OmegaElement& alpha, const OmegaElement& beta, unsigned G,
                                     const Deadline& deadline) {
  const FqContext& f = alpha.field();
  const unsigned m = alpha.precision();
  const unsigned N = alpha.degree(), M = beta.degree();
  if (G + N < M) return std::nullopt;
  const unsigned D = G + N - M;
  const std::size_t rows = G + N + 1;
  ChainMatrix a(f, m, rows, (G + 1) + (D + 1));
  for (unsigned i = 0; i <= G; ++i)
    for (const auto& [e, c] : alpha.terms()) a.set(i + e, i, c.frobenius_power(-static_cast<long long>(i)));
  for (unsigned j = 0; j <= D; ++j)
    for (const auto& [e, c] : beta.terms()) a.set(j + e, G + 1 + j, -c.frobenius_power(-static_cast<long long>(j)));
  const ChainMatrix ker = kernel_rows(a);
  std::optional<ClmWitness> best;
  unsigned best_score = 0;
  for (std::size_t r = 0; r < ker.rows(); ++r) {
    check_deadline(deadline);
    std::map<unsigned, WittFq> g, d;
    for (const auto& [col, x] : ker.row(r)) {
      if (x.is_zero()) continue;
      if (col <= G)
        g.emplace(static_cast<unsigned>(col), x);
      else
        d.emplace(static_cast<unsigned>(col - G - 1), x);
    }
    const OmegaElement gamma = make_omega(f, m, g), delta = make_omega(f, m, d);
    const OmegaElement ga = gamma * alpha;
    if (ga.is_zero() || !(ga == delta * beta)) continue;
    const unsigned score = min_coefficient_valuation(ga);
    if (!best || score < best_score) {
      ClmWitness w;
      w.gamma = gamma;
      w.delta = delta;
      w.method = "ore-linear";
      w.window_lo = ga.lowest_exponent();
      w.window_hi = ga.degree();
      w.residual = ga - delta * beta;
      w.exact = true;
      best = w;
      best_score = score;
    }
  }
  return best;
}

}  // namespace

ClmWitness common_left_multiple(const OmegaElement& alpha_in, const OmegaElement& beta_in, const ClmOptions& opt) {
  if (alpha_in.is_zero() || beta_in.is_zero()) throw DomainError("common_left_multiple: inputs must be nonzero");
  if (&alpha_in.field() != &beta_in.field()) throw DomainError("common_left_multiple: field mismatch");
  const FqContext& f = alpha_in.field();
  const unsigned m = std::min(alpha_in.precision(), beta_in.precision());
  const OmegaElement alpha = alpha_in.with_precision(m), beta = beta_in.with_precision(m);
  if (alpha.is_zero() || beta.is_zero()) throw DomainError("common_left_multiple: input vanishes at precision m");
  const CoeffRing ring = CoeffRing::fq(f);

  const unsigned n = alpha.lowest_exponent(), mp = beta.lowest_exponent();
  const unsigned N = alpha.degree(), M = beta.degree();
  const unsigned l = mp > n ? mp - n : 0, h = n > mp ? n - mp : 0;
  const unsigned k0 = l + n;
  const WittFq a0 = alpha.coefficient(n).frobenius_power(-static_cast<long long>(l));
  const WittFq b0 = beta.coefficient(mp).frobenius_power(-static_cast<long long>(h));
  const bool solve_delta = a0.valuation() >= b0.valuation();

  std::map<unsigned, WittFq> g, d;
  if (solve_delta) {
    g.emplace(l, WittFq::one(ring, m));
    d.emplace(h, *chain_divide(a0, b0));
  } else {
    d.emplace(h, WittFq::one(ring, m));
    g.emplace(l, *chain_divide(b0, a0));
  }

  ClmWitness w;
  w.orientation = solve_delta ? "solve-delta" : "solve-gamma";
  w.method = "inductive";
  const unsigned span = (M - mp) + (N - n);
  const unsigned kmax = k0 + span + opt.extra_steps;
  auto residual = [&]() { return make_omega(f, m, d) * beta - make_omega(f, m, g) * alpha; };
  for (unsigned K = k0 + 1; K <= kmax; ++K) {
    check_deadline(opt.deadline);
    const OmegaElement r = residual();
    if (r.is_zero()) break;
    WittFq e = r.coefficient(K);
    if (e.is_zero()) continue;
    const WittFq piv = solve_delta ? beta.coefficient(mp).frobenius_power(-static_cast<long long>(K - mp))
                                   : alpha.coefficient(n).frobenius_power(-static_cast<long long>(K - n));
    const unsigned mu = piv.valuation();
    if (e.valuation() < mu) {
      const unsigned s = mu - e.valuation();
      for (auto& [i, x] : g) x = x.mul_by_p_power(s);
      for (auto& [i, x] : d) x = x.mul_by_p_power(s);
      w.history.push_back({K, s});
      e = e.mul_by_p_power(s);
      if (e.is_zero()) continue;
    }
    const WittFq q = *chain_divide(e, piv);
    if (solve_delta)
      d[K - mp] = -q;
    else
      g[K - n] = q;
  }
  w.gamma = make_omega(f, m, g);
  w.delta = make_omega(f, m, d);
  const OmegaElement ga = w.gamma * alpha;
  w.residual = ga - w.delta * beta;
  w.exact = w.residual.is_zero() && !ga.is_zero();
  if (w.exact) {
    w.window_lo = ga.lowest_exponent();
    w.window_hi = ga.degree();
    return w;
  }

  const unsigned g0 = l + (M - mp);
  for (unsigned extra = 0; extra <= opt.max_degree_increase; ++extra) {
    if (auto lin = ore_linear(alpha, beta, g0 + extra, opt.deadline)) {
      lin->orientation = w.orientation;
      lin->history = w.history;
      return *lin;
    }
  }
  throw PrecisionError("common_left_multiple: no nonzero common multiple found at precision " + std::to_string(m));
}

// ---------------------------------------------------------------------------
// Lifting through I -> J

ICheckElement lift_through_quotient(const OmegaElement& alpha, const JElement& b) {
  if (alpha.is_zero()) throw DomainError("lift_through_quotient: alpha must be nonzero");
  const unsigned m = alpha.precision();
  ICheckElement r(*b.field, b.lo, b.hi, true);
  for (const auto& [i, x] : b.slots) {
    if (i < 0 || x.is_zero()) {
      r.set(i, x);
      continue;
    }
    const auto want = static_cast<unsigned>(-x.valuation() + static_cast<std::int64_t>(m));
    const WittFq& u = x.mantissa();
    r.set(i, PAdicApprox::from_unit(x.valuation(), want > u.level() ? u.zero_pad(want) : u));
  }
  return r;
}

namespace {

bool j_matches(const ICheckElement& lift, const JElement& target) {
  const int lo = std::min(lift.lo, target.lo);
  const int hi = lift.hi;
  if (target.hi > hi && !lift.finite_tail) return false;
  const int top = std::max(hi, target.hi);
  for (int i = lo; i <= top; ++i) {
    if (i > lift.hi && !lift.finite_tail) break;
    PAdicApprox d = lift.at(i) - target.at(i);
    if (i >= 0) d = d.principal_part();
    if (!d.is_zero()) return false;
  }
  return true;
}

// W_N(F_q) is free over W_N(F_p) = Z/p^N on the Teichmuller lifts of the
// power basis 1, t, ..., t^{r-1} of F_q over F_p.
struct PrimeCoordinates {
  const FqContext* field;
  const FqContext* prime;
  unsigned level;
  std::vector<WittFq> basis;

  PrimeCoordinates(const FqContext& f, unsigned n) : field(&f), prime(&FqContext::get(f.characteristic())), level(n) {
    const CoeffRing ring = CoeffRing::fq(f);
    for (unsigned j = 0; j < f.degree(); ++j) {
      std::vector<unsigned> c(f.degree(), 0);
      c[j] = 1;
      basis.push_back(WittFq::teichmuller(ring, f.from_coeffs(c), n));
    }
  }

  // x = sum_j d_j [b_j] + p sigma^{-1}(y) with digits d_j in [0, p), recursed
  // on the lower level.
  std::vector<BigInt> coords(const WittFq& x) const {
    const unsigned p = field->characteristic();
    std::vector<BigInt> out(basis.size(), BigInt(0));
    WittFq cur = x;
    BigInt scale(1);
    for (unsigned t = 0; t < level; ++t) {
      const unsigned lv = cur.level();
      const auto digits = cur[0].coeffs();
      WittFq rest = cur;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const unsigned dj = j < digits.size() ? digits[j] : 0;
        if (dj == 0) continue;
        out[j] += scale * dj;
        rest = rest - WittFq::from_integer(cur.ring(), lv, BigInt(std::to_string(dj))) * basis[j].restrict(lv);
      }
      if (lv == 1) break;
      std::vector<FqElem> tail(rest.components().begin() + 1, rest.components().end());
      cur = WittFq(cur.ring(), std::move(tail)).frobenius_power(-1);
      scale *= p;
    }
    return out;
  }

  WittFq value(const std::vector<WittFq>& c) const {
    const CoeffRing ring = CoeffRing::fq(*field);
    WittFq x = WittFq::zero(ring, level);
    for (std::size_t j = 0; j < basis.size(); ++j)
      x = x + WittFq::from_integer(ring, level, iso_zpn(c[j])) * basis[j];
    return x;
  }
};

// Zero modulo p^m, the working precision of the omega coefficients.
bool negligible(const PAdicApprox& x, std::int64_t m) { return x.is_zero() || x.valuation() >= m; }

struct Adjustment {
  ICheckElement da, db;
};

// Integral corrections da, db (slots >= 0) with gamma da - delta db = -r on
// slots [0, hi], as one Z/p^N-linear system in prime-field coordinates. The
// sides not listed in `use_a`/`use_b` stay zero.
std::optional<Adjustment> solve_adjustment(const OmegaElement& gamma, const OmegaElement& delta, const ICheckElement& r,
                                           int hi, bool use_a, bool use_b) {
  const FqContext& f = *r.field;
  const auto m = static_cast<std::int64_t>(gamma.precision());
  for (const auto& [i, x] : r.slots)
    if (!negligible(x, m) && (i < 0 || !x.is_integral())) return std::nullopt;
  std::int64_t prec = m;
  for (const auto& [i, x] : r.slots)
    if (i <= hi) prec = std::min(prec, x.absolute_precision());
  if (prec < 1) return std::nullopt;
  const auto N = static_cast<unsigned>(prec);
  const PrimeCoordinates pc(f, N);
  const std::size_t deg = pc.basis.size();

  struct Unknown {
    bool side_a;
    int slot;
    std::size_t basis;
  };
  std::vector<Unknown> unknowns;
  const int top_a = hi - static_cast<int>(gamma.lowest_exponent());
  const int top_b = hi - static_cast<int>(delta.lowest_exponent());
  for (int j = 0; use_a && j <= top_a; ++j)
    for (std::size_t e = 0; e < deg; ++e) unknowns.push_back({true, j, e});
  for (int j = 0; use_b && j <= top_b; ++j)
    for (std::size_t e = 0; e < deg; ++e) unknowns.push_back({false, j, e});
  if (unknowns.empty()) return std::nullopt;

  const std::size_t rows = static_cast<std::size_t>(hi + 1) * deg;
  ChainMatrix A(*pc.prime, N, rows, unknowns.size());
  auto put = [&](std::size_t col, int k, const PAdicApprox& x, bool negate) {
    if (x.is_zero()) return;
    const auto c = pc.coords(x.to_witt(N));
    for (std::size_t e = 0; e < deg; ++e) {
      WittFq v = iso_zpn_inverse(*pc.prime, N, c[e]);
      if (negate) v = -v;
      if (!v.is_zero()) A.set(static_cast<std::size_t>(k) * deg + e, col, v);
    }
  };
  for (std::size_t col = 0; col < unknowns.size(); ++col) {
    const Unknown& u = unknowns[col];
    ICheckElement unit(f, u.slot, u.slot, true);
    unit.set(u.slot, PAdicApprox::from_witt(pc.basis[u.basis]));
    const ICheckElement img = left_mul(u.side_a ? gamma : delta, unit);
    for (const auto& [k, x] : img.slots)
      if (k >= 0 && k <= hi) put(col, k, x, !u.side_a);
  }
  ChainVector y = zero_vector(*pc.prime, N, rows);
  for (const auto& [k, x] : r.slots) {
    if (k < 0 || k > hi || x.is_zero()) continue;
    const auto c = pc.coords(x.to_witt(N));
    for (std::size_t e = 0; e < deg; ++e) y[static_cast<std::size_t>(k) * deg + e] = -iso_zpn_inverse(*pc.prime, N, c[e]);
  }

  const SmithForm sf = smith_form(A, true, true);
  const ChainMatrix D = sf.U * A * sf.V;
  const ChainVector z = sf.U.apply(y);
  ChainVector w = zero_vector(*pc.prime, N, unknowns.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i < sf.rank) {
      const auto q = chain_divide(z[i], D.at(i, i));
      if (!q) return std::nullopt;
      w[i] = *q;
    } else if (!z[i].is_zero()) {
      return std::nullopt;
    }
  }
  const ChainVector x = sf.V.apply(w);
  if (!(A.apply(x) == y)) return std::nullopt;

  Adjustment adj{ICheckElement(f, 0, std::max(top_a, 0), true), ICheckElement(f, 0, std::max(top_b, 0), true)};
  std::map<std::pair<bool, int>, std::vector<WittFq>> coeffs;
  for (std::size_t col = 0; col < unknowns.size(); ++col) {
    auto& v = coeffs[{unknowns[col].side_a, unknowns[col].slot}];
    if (v.empty()) v.assign(deg, WittFq::zero(CoeffRing::fq(*pc.prime), N));
    v[unknowns[col].basis] = x[col];
  }
  // A vanishing correction is still only known modulo p^N.
  for (const auto& [key, c] : coeffs) {
    const WittFq val = pc.value(c);
    (key.first ? adj.da : adj.db)
        .set(key.second, val.is_zero() ? PAdicApprox::zero_mod(f, N) : PAdicApprox::from_witt(val));
  }
  return adj;
}

ICheckElement clip(const ICheckElement& x, int hi) {
  ICheckElement r(*x.field, x.lo, std::max(x.lo, hi), true);
  for (const auto& [i, v] : x.slots)
    if (i <= hi) r.set(i, v);
  return r;
}

}  // namespace

LiftPairResult lift_pair(const OmegaElement& gamma, const OmegaElement& delta, const JElement& a, const JElement& b,
                         int window_hi) {
  if (gamma.is_zero() || delta.is_zero()) throw DomainError("lift_pair: gamma and delta must be nonzero");
  LiftPairResult res;
  res.a_lift = lift_through_quotient(gamma, a);
  res.b_lift = lift_through_quotient(delta, b);
  const int hi = std::max({window_hi, a.hi, b.hi});
  const auto m = static_cast<std::int64_t>(std::min(gamma.precision(), delta.precision()));
  auto vanishes = [m](const ICheckElement& x) {
    return std::all_of(x.slots.begin(), x.slots.end(), [m](const auto& s) { return negligible(s.second, m); });
  };
  const ICheckElement r = clip(left_mul(gamma, res.a_lift) - left_mul(delta, res.b_lift), hi);
  res.adjusted = "none";
  if (!vanishes(r)) {
    res.adjusted = "failed";
    const std::pair<bool, bool> sides[] = {{false, true}, {true, false}, {true, true}};
    const char* names[] = {"b", "a", "both"};
    for (int s = 0; s < 3; ++s) {
      if (auto adj = solve_adjustment(gamma, delta, r, hi, sides[s].first, sides[s].second)) {
        res.a_lift = res.a_lift + adj->da;
        res.b_lift = res.b_lift + adj->db;
        res.adjusted = names[s];
        break;
      }
    }
  }
  res.residual = clip(left_mul(gamma, res.a_lift) - left_mul(delta, res.b_lift), hi);
  res.residual_zero = vanishes(res.residual);
  res.quotients_match = j_matches(res.a_lift, a) && j_matches(res.b_lift, b);
  return res;
}

// ---------------------------------------------------------------------------
// Torsion comparison

TorsionComparison torsion_compare(const FiniteChainModule& m, const SemilinearMap& p_action,
                                  const SemilinearMap& v_action) {
  const std::size_t g = m.generators;
  for (const auto* f : {&p_action, &v_action}) {
    if (f->matrix.rows() != g || f->matrix.cols() != g)
      throw DomainError("torsion_compare: action matrix is " + std::to_string(f->matrix.rows()) + "x" +
                        std::to_string(f->matrix.cols()) + ", module has " + std::to_string(g) + " generators");
    if (g > 0 && f->matrix.level() != m.level) throw DomainError("torsion_compare: action matrix level mismatch");
  }
  TorsionComparison out;
  const ChainMatrix& rel = m.relations;
  if (g == 0) {
    out.coincide = true;
    return out;
  }
  if (!semilinear_well_defined(p_action, rel)) throw DomainError("torsion_compare: p-action does not preserve relations");
  if (!semilinear_well_defined(v_action, rel)) throw DomainError("torsion_compare: V-action does not preserve relations");
  out.p_kernel = semilinear_kernel(p_action, rel);
  out.v_kernel = semilinear_kernel(v_action, rel);
  out.p_torsion = submodule_invariants(out.p_kernel, rel);
  out.v_torsion = submodule_invariants(out.v_kernel, rel);
  out.coincide = submodules_equal(out.p_kernel, out.v_kernel, rel);
  return out;
}

PresentedActions random_presentation_change(const FiniteChainModule& m, const SemilinearMap& p_action,
                                            const SemilinearMap& v_action, std::mt19937_64& rng) {
  const FqContext& f = *m.field;
  const unsigned n = m.level;
  const std::size_t g = m.generators;
  ChainMatrix P = ChainMatrix::identity(f, n, g), Pinv = ChainMatrix::identity(f, n, g);
  const CoeffRing ring = CoeffRing::fq(f);
  if (g >= 1) {
    for (int step = 0; step < static_cast<int>(3 * g); ++step) {
      const std::size_t i = rng() % g, j = rng() % g;
      if (i == j) {
        WittFq u = random_witt(f, n, rng);
        if (u[0].is_zero()) u = u + WittFq::one(ring, n);
        ChainMatrix e = ChainMatrix::identity(f, n, g), einv = ChainMatrix::identity(f, n, g);
        e.set(i, i, u);
        einv.set(i, i, unit_inverse(u));
        P = P * e;
        Pinv = einv * Pinv;
      } else {
        const WittFq c = random_witt(f, n, rng);
        ChainMatrix e = ChainMatrix::identity(f, n, g), einv = ChainMatrix::identity(f, n, g);
        e.set(i, j, c);
        einv.set(i, j, -c);
        P = P * e;
        Pinv = einv * Pinv;
      }
    }
  }
  PresentedActions out;
  ChainMatrix rel = m.relations.rows() ? m.relations * Pinv.transpose() : m.relations;
  const std::size_t base = rel.rows();
  for (std::size_t extra = 0; extra < 2 && base > 0; ++extra) {
    ChainVector comb = zero_vector(f, n, g);
    for (std::size_t r = 0; r < base; ++r) {
      const WittFq c = random_witt(f, n, rng);
      const ChainVector row = rel.row_vector(r);
      for (std::size_t k = 0; k < g; ++k) comb[k] = comb[k] + c * row[k];
    }
    rel.append_row(comb);
  }
  out.module = FiniteChainModule(f, n, g, rel);
  auto conj = [&](const SemilinearMap& a) {
    return SemilinearMap{Pinv * a.matrix * P.frobenius_power(a.twist), a.twist};
  };
  out.p_action = conj(p_action);
  out.v_action = conj(v_action);
  return out;
}

}  // namespace wittlab
