#include "wittlab/witt_vector.hpp"

#include <map>
#include <sstream>

#include "wittlab/errors.hpp"
#include "wittlab/witt_polys.hpp"

namespace wittlab {

std::string CoeffRing::name() const {
  const std::string k = "F_" + std::to_string(field->order());
  switch (kind) {
    case RingKind::Fq:
      return k;
    case RingKind::FqPoly:
      return k + "[t]";
    case RingKind::FqLaurent:
      return k + "[t,1/t]";
  }
  return k;
}

namespace {

template <class E>
struct Ops;

template <>
struct Ops<FqElem> {
  static FqElem zero(const CoeffRing& r) { return r.field->zero(); }
  static FqElem from_int(const CoeffRing& r, long long k) { return r.field->from_int(k); }
  static FqElem frob(const FqElem& a, long long k) { return a.frobenius_power(k); }
  static void validate(const CoeffRing& r, const FqElem& a) {
    if (r.kind != RingKind::Fq) throw DomainError("finite-field component for ring " + r.name());
    if (a.context_ptr() != r.field) throw DomainError("Witt component from a different field than " + r.name());
  }
  static std::string show(const FqElem& a) { return a.to_string(); }
};

template <>
struct Ops<LaurentPoly> {
  static LaurentPoly zero(const CoeffRing& r) { return LaurentPoly(*r.field); }
  static LaurentPoly from_int(const CoeffRing& r, long long k) { return LaurentPoly::constant(r.field->from_int(k)); }
  static LaurentPoly frob(const LaurentPoly& a, long long k) { return a.frobenius_coefficients(k); }
  static void validate(const CoeffRing& r, const LaurentPoly& a) {
    if (r.kind == RingKind::Fq) throw DomainError("polynomial component for ring " + r.name());
    if (!a.is_zero() && a.context_ptr() != r.field)
      throw DomainError("Witt component from a different field than " + r.name());
    if (r.kind == RingKind::FqPoly && !a.divisible_by_t_power(0))
      throw DomainError("negative exponent in a component over " + r.name());
  }
  static std::string show(const LaurentPoly& a) { return a.to_string(); }
};

inline FqElem power(const FqElem& a, std::uint32_t e) { return a.pow(e); }
inline LaurentPoly power(const LaurentPoly& a, std::uint32_t e) { return a.pow(e); }

// Evaluates polys[0..count) at (X, Y) = (x, y). Variables of the covering set
// are X_i = i, Y_i = level + i.
template <class E>
std::vector<E> evaluate(const CoeffRing& ring, const std::vector<ReducedPoly>& polys, unsigned covering_level,
                        unsigned count, const std::vector<E>& x, const std::vector<E>* y) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, E> power_cache;
  auto var_power = [&](std::uint32_t var, std::uint32_t e) -> const E& {
    auto key = std::make_pair(var, e);
    auto it = power_cache.find(key);
    if (it != power_cache.end()) return it->second;
    const E& base = var < covering_level ? x[var] : (*y)[var - covering_level];
    return power_cache.emplace(key, power(base, e)).first->second;
  };
  std::vector<E> out;
  out.reserve(count);
  for (unsigned k = 0; k < count; ++k) {
    E acc = Ops<E>::zero(ring);
    for (const auto& term : polys[k].terms) {
      E prod = Ops<E>::from_int(ring, term.coeff);
      bool vanished = false;
      for (const auto& [var, e] : term.factors) {
        const E& f = var_power(var, e);
        if (f.is_zero()) {
          vanished = true;
          break;
        }
        prod = prod * f;
      }
      if (!vanished) acc = acc + prod;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace

template <class E>
WittVector<E>::WittVector(CoeffRing ring, std::vector<E> components) : ring_(ring), c_(std::move(components)) {
  if (ring_.field == nullptr) throw DomainError("Witt vector without a coefficient field");
  if (c_.empty()) throw DomainError("Witt vectors need level >= 1");
  for (auto& a : c_) {
    Ops<E>::validate(ring_, a);
    if constexpr (std::is_same_v<E, LaurentPoly>) {
      if (a.is_zero()) a = LaurentPoly(*ring_.field);
    }
  }
}

template <class E>
WittVector<E> WittVector<E>::zero(CoeffRing ring, unsigned n) {
  if (n < 1) throw DomainError("Witt vectors need level >= 1");
  return WittVector(ring, std::vector<E>(n, Ops<E>::zero(ring)));
}

template <class E>
WittVector<E> WittVector<E>::one(CoeffRing ring, unsigned n) {
  auto z = zero(ring, n);
  z.c_[0] = Ops<E>::from_int(ring, 1);
  return z;
}

template <class E>
WittVector<E> WittVector<E>::teichmuller(CoeffRing ring, const E& a, unsigned n) {
  auto z = zero(ring, n);
  Ops<E>::validate(ring, a);
  if (!a.is_zero()) z.c_[0] = a;
  return z;
}

template <class E>
WittVector<E> WittVector<E>::from_integer(CoeffRing ring, unsigned n, const BigInt& k) {
  BigInt m = abs(k);
  WittVector acc = zero(ring, n);
  const WittVector unit = one(ring, n);
  const std::size_t bits = m == 0 ? 0 : mpz_sizeinbase(m.get_mpz_t(), 2);
  for (std::size_t b = bits; b-- > 0;) {
    acc = acc + acc;
    if (mpz_tstbit(m.get_mpz_t(), b)) acc = acc + unit;
  }
  return k < 0 ? -acc : acc;
}

template <class E>
bool WittVector<E>::is_zero() const {
  for (const auto& a : c_)
    if (!a.is_zero()) return false;
  return true;
}

template <class E>
unsigned WittVector<E>::valuation() const {
  for (unsigned i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return i;
  return level();
}

template <class E>
void WittVector<E>::check_compatible(const WittVector& o, const char* op) const {
  if (!(ring_ == o.ring_)) throw DomainError(std::string(op) + ": ring mismatch " + ring_.name() + " vs " + o.ring_.name());
  if (level() != o.level())
    throw DomainError(std::string(op) + ": level mismatch " + std::to_string(level()) + " vs " + std::to_string(o.level()));
}

template <class E>
WittVector<E> WittVector<E>::operator+(const WittVector& o) const {
  check_compatible(o, "witt_add");
  const auto& polys = reduced_witt_polys(prime(), level());
  return WittVector(ring_, evaluate(ring_, polys.sum, polys.level, level(), c_, &o.c_));
}

template <class E>
WittVector<E> WittVector<E>::operator*(const WittVector& o) const {
  check_compatible(o, "witt_mul");
  const auto& polys = reduced_witt_polys(prime(), level());
  return WittVector(ring_, evaluate(ring_, polys.product, polys.level, level(), c_, &o.c_));
}

template <class E>
WittVector<E> WittVector<E>::operator-() const {
  const auto& polys = reduced_witt_polys(prime(), level());
  return WittVector(ring_, evaluate<E>(ring_, polys.negation, polys.level, level(), c_, nullptr));
}

template <class E>
WittVector<E> WittVector<E>::frobenius() const {
  if (ring_.perfect()) return frobenius_power(1);
  return frobenius_general();
}

template <class E>
WittVector<E> WittVector<E>::frobenius_general() const {
  if (level() < 2) throw DomainError("general Frobenius needs level >= 2 (it maps W_n to W_{n-1})");
  const auto& polys = reduced_witt_polys(prime(), level());
  return WittVector(ring_, evaluate<E>(ring_, polys.frobenius, polys.level, level() - 1, c_, nullptr));
}

template <class E>
WittVector<E> WittVector<E>::frobenius_power(long long k) const {
  if (!ring_.perfect()) throw DomainError("element-wise Frobenius powers need a perfect coefficient ring");
  std::vector<E> out;
  out.reserve(c_.size());
  for (const auto& a : c_) out.push_back(Ops<E>::frob(a, k));
  return WittVector(ring_, std::move(out));
}

template <class E>
WittVector<E> WittVector<E>::verschiebung() const {
  std::vector<E> out;
  out.reserve(c_.size() + 1);
  out.push_back(Ops<E>::zero(ring_));
  out.insert(out.end(), c_.begin(), c_.end());
  return WittVector(ring_, std::move(out));
}

template <class E>
WittVector<E> WittVector<E>::restrict(unsigned m) const {
  if (m < 1 || m > level())
    throw DomainError("restrict: target level " + std::to_string(m) + " outside [1, " + std::to_string(level()) + "]");
  return WittVector(ring_, std::vector<E>(c_.begin(), c_.begin() + m));
}

template <class E>
WittVector<E> WittVector<E>::zero_pad(unsigned m) const {
  if (m < level()) throw DomainError("zero_pad: target level below current level");
  auto out = c_;
  out.resize(m, Ops<E>::zero(ring_));
  return WittVector(ring_, std::move(out));
}

template <class E>
WittVector<E> WittVector<E>::mul_by_p() const {
  auto p = zero(ring_, level());
  if (level() >= 2) p.c_[1] = Ops<E>::from_int(ring_, 1);
  return *this * p;
}

template <class E>
WittVector<E> WittVector<E>::mul_by_p_power(unsigned k) const {
  WittVector r = *this;
  for (unsigned i = 0; i < k && !r.is_zero(); ++i) r = r.mul_by_p();
  return r;
}

template <class E>
std::string WittVector<E>::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << Ops<E>::show(c_[i]);
  os << ")";
  return os.str();
}

template class WittVector<FqElem>;
template class WittVector<LaurentPoly>;

namespace {

void require_prime_field(const WittFq& x) {
  if (x.ring().kind != RingKind::Fq || x.ring().field->degree() != 1)
    throw DomainError("Z/p^n isomorphism needs the prime field, got " + x.ring().name());
}

}  // namespace

std::vector<BigInt> ghost_vector(const WittFq& x) {
  require_prime_field(x);
  const unsigned p = x.prime();
  const unsigned n = x.level();
  BigInt modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), p, n);
  std::vector<BigInt> out;
  for (unsigned k = 0; k < n; ++k) {
    BigInt w = 0;
    for (unsigned i = 0; i <= k; ++i) {
      BigInt e, term, pi;
      mpz_ui_pow_ui(e.get_mpz_t(), p, k - i);
      mpz_powm(term.get_mpz_t(), BigInt(x[i].index()).get_mpz_t(), e.get_mpz_t(), modulus.get_mpz_t());
      mpz_ui_pow_ui(pi.get_mpz_t(), p, i);
      w += pi * term;
    }
    w %= modulus;
    out.push_back(w);
  }
  return out;
}

BigInt iso_zpn(const WittFq& x) { return ghost_vector(x).back(); }

WittFq iso_zpn_inverse(const FqContext& prime_field, unsigned n, const BigInt& k) {
  if (prime_field.degree() != 1) throw DomainError("Z/p^n isomorphism needs the prime field");
  BigInt modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), prime_field.characteristic(), n);
  BigInt r = k % modulus;
  if (r < 0) r += modulus;
  return WittFq::from_integer(CoeffRing::fq(prime_field), n, r);
}

std::vector<WittFq> all_witt_vectors(const FqContext& k, unsigned n) {
  const CoeffRing ring = CoeffRing::fq(k);
  std::vector<WittFq> out;
  std::vector<std::uint32_t> idx(n, 0);
  while (true) {
    std::vector<FqElem> comps;
    for (auto v : idx) comps.push_back(k.from_index(v));
    out.emplace_back(ring, std::move(comps));
    unsigned pos = n;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < k.order()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

WittFq random_witt(const FqContext& k, unsigned n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, k.order() - 1);
  std::vector<FqElem> comps;
  for (unsigned i = 0; i < n; ++i) comps.push_back(k.from_index(dist(rng)));
  return WittFq(CoeffRing::fq(k), std::move(comps));
}

}  // namespace wittlab
