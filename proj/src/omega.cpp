#include "wittlab/omega.hpp"

#include <atomic>
#include <sstream>

#include "wittlab/errors.hpp"

namespace wittlab {

namespace {

std::atomic<unsigned> g_v_cap{32};

void check_v_exponent(unsigned e) {
  if (e > g_v_cap.load())
    throw PrecisionError("V-exponent " + std::to_string(e) + " exceeds the configured cap " +
                         std::to_string(g_v_cap.load()));
}

bool is_teichmuller(const WittFq& a) {
  for (unsigned i = 1; i < a.level(); ++i)
    if (!a[i].is_zero()) return false;
  return true;
}

// p^v [c] has the single nonzero component sigma^v(c) in position v.
std::string coefficient_text(const WittFq& a) {
  if (is_teichmuller(a)) return "[" + a[0].to_string() + "]";
  if (a.is_zero()) return a.to_string();
  const unsigned v = a.valuation();
  for (unsigned i = v + 1; i < a.level(); ++i)
    if (!a[i].is_zero()) return a.to_string();
  const FqElem c = a[v].frobenius_power(-static_cast<long long>(v));
  const std::string pv = v == 1 ? "p" : "p^" + std::to_string(v);
  return c == a.ring().field->one() ? pv : pv + "*[" + c.to_string() + "]";
}

}  // namespace

unsigned omega_v_cap() { return g_v_cap.load(); }
void set_omega_v_cap(unsigned cap) { g_v_cap.store(cap); }

OmegaElement::OmegaElement(const FqContext& field, unsigned precision) : field_(&field), precision_(precision) {
  if (precision < 1) throw DomainError("omega coefficients need precision >= 1");
}

OmegaElement::OmegaElement(const FqContext& field, unsigned precision, std::map<unsigned, WittFq> terms)
    : OmegaElement(field, precision) {
  terms_ = std::move(terms);
  for (const auto& [i, a] : terms_) {
    check_v_exponent(i);
    if (!(a.ring() == CoeffRing::fq(field)))
      throw DomainError("omega coefficient over " + a.ring().name() + ", expected " + field.describe());
    if (a.level() != precision)
      throw DomainError("omega coefficient at level " + std::to_string(a.level()) + ", expected precision " +
                        std::to_string(precision));
  }
  canonicalize();
}

void OmegaElement::canonicalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
}

OmegaElement OmegaElement::monomial(const WittFq& a, unsigned v_exponent) {
  if (!a.ring().perfect()) throw DomainError("omega coefficients must lie in W(F_q)");
  std::map<unsigned, WittFq> t;
  t.emplace(v_exponent, a);
  return OmegaElement(*a.ring().field, a.level(), std::move(t));
}

OmegaElement OmegaElement::one(const FqContext& field, unsigned precision) {
  return monomial(WittFq::one(CoeffRing::fq(field), precision), 0);
}

OmegaElement OmegaElement::V(const FqContext& field, unsigned precision, unsigned power) {
  return monomial(WittFq::one(CoeffRing::fq(field), precision), power);
}

OmegaElement OmegaElement::p(const FqContext& field, unsigned precision, unsigned power) {
  return monomial(WittFq::one(CoeffRing::fq(field), precision).mul_by_p_power(power), 0);
}

WittFq OmegaElement::coefficient(unsigned i) const {
  auto it = terms_.find(i);
  if (it != terms_.end()) return it->second;
  return WittFq::zero(CoeffRing::fq(*field_), precision_);
}

unsigned OmegaElement::lowest_exponent() const {
  if (terms_.empty()) throw DomainError("lowest V-exponent of zero");
  return terms_.begin()->first;
}

unsigned OmegaElement::degree() const {
  if (terms_.empty()) throw DomainError("V-degree of zero");
  return terms_.rbegin()->first;
}

OmegaElement OmegaElement::with_precision(unsigned m) const {
  if (m > precision_)
    throw PrecisionError("cannot raise omega precision from " + std::to_string(precision_) + " to " +
                         std::to_string(m));
  if (m == precision_) return *this;
  std::map<unsigned, WittFq> t;
  for (const auto& [i, a] : terms_) t.emplace(i, a.restrict(m));
  return OmegaElement(*field_, m, std::move(t));
}

void OmegaElement::unify(OmegaElement& a, OmegaElement& b) {
  if (a.field_ != b.field_) throw DomainError("omega elements over different fields");
  const unsigned m = std::min(a.precision_, b.precision_);
  a = a.with_precision(m);
  b = b.with_precision(m);
}

OmegaElement OmegaElement::operator+(const OmegaElement& o) const {
  OmegaElement a = *this, b = o;
  unify(a, b);
  for (const auto& [i, c] : b.terms_) {
    auto it = a.terms_.find(i);
    if (it == a.terms_.end())
      a.terms_.emplace(i, c);
    else
      it->second = it->second + c;
  }
  a.canonicalize();
  return a;
}

OmegaElement OmegaElement::operator-() const {
  OmegaElement r = *this;
  for (auto& [i, c] : r.terms_) c = -c;
  return r;
}

OmegaElement OmegaElement::operator-(const OmegaElement& o) const { return *this + (-o); }

OmegaElement OmegaElement::operator*(const OmegaElement& o) const {
  OmegaElement a = *this, b = o;
  unify(a, b);
  OmegaElement r(*a.field_, a.precision_);
  for (const auto& [i, x] : a.terms_) {
    for (const auto& [j, y] : b.terms_) {
      check_v_exponent(i + j);
      WittFq prod = x * y.frobenius_power(-static_cast<long long>(i));
      auto it = r.terms_.find(i + j);
      if (it == r.terms_.end())
        r.terms_.emplace(i + j, prod);
      else
        it->second = it->second + prod;
    }
  }
  r.canonicalize();
  return r;
}

OmegaElement OmegaElement::left_action(const WittFq& a) const { return constant(a) * *this; }

std::string OmegaElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, a] : terms_) {
    if (!first) os << " + ";
    first = false;
    const bool unit_coeff = a == WittFq::one(a.ring(), a.level());
    if (!unit_coeff || i == 0) os << coefficient_text(a);
    if (i > 0) {
      if (!unit_coeff) os << "*";
      os << "V";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

OmegaTrunc::OmegaTrunc(const FqContext& field, std::vector<WittFq> slots) : field_(&field), slots_(std::move(slots)) {
  const unsigned n = level();
  if (n < 1) throw DomainError("omega_n needs n >= 1");
  for (unsigned i = 0; i < n; ++i) {
    if (!(slots_[i].ring() == CoeffRing::fq(field))) throw DomainError("omega_n slot over the wrong ring");
    if (slots_[i].level() != n - i)
      throw DomainError("omega_" + std::to_string(n) + " slot " + std::to_string(i) + " has level " +
                        std::to_string(slots_[i].level()) + ", expected " + std::to_string(n - i));
  }
}

OmegaTrunc OmegaTrunc::zero(const FqContext& field, unsigned n) {
  std::vector<WittFq> s;
  for (unsigned i = 0; i < n; ++i) s.push_back(WittFq::zero(CoeffRing::fq(field), n - i));
  return OmegaTrunc(field, std::move(s));
}

OmegaTrunc OmegaTrunc::project(const OmegaElement& x, unsigned n) {
  if (n < 1) throw DomainError("omega_n needs n >= 1");
  if (x.precision() < n)
    throw PrecisionError("projection to omega_" + std::to_string(n) + " needs precision >= " + std::to_string(n) +
                         ", have " + std::to_string(x.precision()));
  OmegaTrunc r = zero(x.field(), n);
  for (const auto& [i, a] : x.terms())
    if (i < n) r.slots_[i] = a.restrict(n - i);
  return r;
}

bool OmegaTrunc::is_zero() const {
  for (const auto& s : slots_)
    if (!s.is_zero()) return false;
  return true;
}

OmegaElement OmegaTrunc::lift() const {
  const unsigned n = level();
  std::map<unsigned, WittFq> t;
  for (unsigned i = 0; i < n; ++i)
    if (!slots_[i].is_zero()) t.emplace(i, slots_[i].zero_pad(n));
  return OmegaElement(*field_, n, std::move(t));
}

void OmegaTrunc::check_compatible(const OmegaTrunc& o) const {
  if (field_ != o.field_) throw DomainError("omega_n elements over different fields");
  if (level() != o.level())
    throw DomainError("omega_n level mismatch " + std::to_string(level()) + " vs " + std::to_string(o.level()));
}

OmegaTrunc OmegaTrunc::operator+(const OmegaTrunc& o) const {
  check_compatible(o);
  OmegaTrunc r = *this;
  for (unsigned i = 0; i < level(); ++i) r.slots_[i] = slots_[i] + o.slots_[i];
  return r;
}

OmegaTrunc OmegaTrunc::operator-() const {
  OmegaTrunc r = *this;
  for (auto& s : r.slots_) s = -s;
  return r;
}

OmegaTrunc OmegaTrunc::operator-(const OmegaTrunc& o) const { return *this + (-o); }

OmegaTrunc OmegaTrunc::left_action(const WittFq& a) const {
  if (a.level() < level()) throw DomainError("left action on omega_n needs a coefficient of level >= n");
  OmegaTrunc r = *this;
  for (unsigned i = 0; i < level(); ++i) r.slots_[i] = a.restrict(level() - i) * slots_[i];
  return r;
}

OmegaTrunc OmegaTrunc::right_action(const OmegaElement& y) const {
  if (&y.field() != field_) throw DomainError("right action by an omega element over a different field");
  const unsigned n = level();
  return project(lift() * y.with_precision(std::min(y.precision(), n)), n);
}

OmegaTrunc OmegaTrunc::pi() const {
  const unsigned n = level();
  if (n < 2) throw DomainError("pi: omega_1 -> omega_0 has no target");
  std::vector<WittFq> s;
  for (unsigned i = 0; i + 1 < n; ++i) s.push_back(slots_[i].restrict(n - 1 - i));
  return OmegaTrunc(*field_, std::move(s));
}

OmegaTrunc OmegaTrunc::rho() const {
  const unsigned n = level() + 1;
  std::vector<WittFq> s;
  for (unsigned i = 0; i + 1 < n; ++i) s.push_back(slots_[i].zero_pad(n - i).mul_by_p());
  s.push_back(WittFq::zero(CoeffRing::fq(*field_), 1));
  return OmegaTrunc(*field_, std::move(s));
}

std::string OmegaTrunc::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (unsigned i = 0; i < level(); ++i) {
    if (slots_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << coefficient_text(slots_[i]);
    if (i > 0) os << "*V" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  if (first) os << "0";
  os << "  (in omega_" << level() << ")";
  return os.str();
}

std::vector<OmegaTrunc> all_omega_trunc(const FqContext& field, unsigned n) {
  std::vector<std::vector<WittFq>> per_slot;
  for (unsigned i = 0; i < n; ++i) per_slot.push_back(all_witt_vectors(field, n - i));
  std::vector<OmegaTrunc> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<WittFq> s;
    for (unsigned i = 0; i < n; ++i) s.push_back(per_slot[i][idx[i]]);
    out.emplace_back(field, std::move(s));
    unsigned pos = 0;
    while (true) {
      if (++idx[pos] < per_slot[pos].size()) break;
      idx[pos] = 0;
      if (++pos == n) return out;
    }
  }
}

OmegaTrunc random_omega_trunc(const FqContext& field, unsigned n, std::mt19937_64& rng) {
  std::vector<WittFq> s;
  for (unsigned i = 0; i < n; ++i) s.push_back(random_witt(field, n - i, rng));
  return OmegaTrunc(field, std::move(s));
}

OmegaElement random_omega(const FqContext& field, unsigned precision, unsigned max_degree, std::mt19937_64& rng) {
  std::map<unsigned, WittFq> t;
  std::uniform_int_distribution<int> coin(0, 2);
  for (unsigned i = 0; i <= max_degree; ++i)
    if (coin(rng) != 0) t.emplace(i, random_witt(field, precision, rng));
  return OmegaElement(field, precision, std::move(t));
}

}  // namespace wittlab
