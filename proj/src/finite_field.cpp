#include "wittlab/finite_field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "wittlab/errors.hpp"
#include "wittlab/witt_polys.hpp"

namespace wittlab {

namespace {

constexpr unsigned kTableLimit = 256;

// Remainder of a modulo b over F_p; b monic. Lowest coefficient first.
std::vector<unsigned> poly_mod(std::vector<unsigned> a, const std::vector<unsigned>& b, unsigned p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    unsigned lead = a.back() % p;
    if (lead != 0) {
      std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) a[shift + i] = (a[shift + i] + p * p - (lead * b[i]) % p) % p;
    }
    a.pop_back();
  }
  return a;
}

bool all_zero(const std::vector<unsigned>& v) {
  for (auto c : v)
    if (c != 0) return false;
  return true;
}

std::vector<unsigned> default_modulus(unsigned p, unsigned m) {
  if (m == 1) return {0, 1};
  if (p == 2 && m == 2) return {1, 1, 1};
  if (p == 2 && m == 3) return {1, 1, 0, 1};
  if (p == 2 && m == 4) return {1, 1, 0, 0, 1};
  if (p == 3 && m == 2) return {2, 2, 1};
  throw DomainError("no built-in modulus for q = " + std::to_string(p) + "^" + std::to_string(m) +
                    "; supply one explicitly");
}

}  // namespace

bool is_irreducible(unsigned p, const std::vector<unsigned>& poly) {
  if (poly.size() < 2) return false;
  const unsigned m = static_cast<unsigned>(poly.size() - 1);
  if (poly.back() % p != 1) return false;
  if (m == 1) return true;
  for (unsigned d = 1; d <= m / 2; ++d) {
    // Enumerate monic divisors of degree d.
    unsigned long long count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (unsigned long long idx = 0; idx < count; ++idx) {
      std::vector<unsigned> div(d + 1);
      unsigned long long x = idx;
      for (unsigned i = 0; i < d; ++i) {
        div[i] = static_cast<unsigned>(x % p);
        x /= p;
      }
      div[d] = 1;
      if (all_zero(poly_mod(poly, div, p))) return false;
    }
  }
  return true;
}

struct FqRegistry {
  std::mutex mutex;
  std::map<std::pair<unsigned, std::vector<unsigned>>, std::unique_ptr<FqContext>> contexts;

  const FqContext& get(unsigned p, std::vector<unsigned> modulus) {
    std::lock_guard lock(mutex);
    auto key = std::make_pair(p, modulus);
    auto it = contexts.find(key);
    if (it != contexts.end()) return *it->second;
    auto ctx = std::unique_ptr<FqContext>(new FqContext(p, std::move(modulus)));
    auto& slot = contexts[key];
    slot = std::move(ctx);
    return *slot;
  }
};

static FqRegistry& fq_registry() {
  static FqRegistry r;
  return r;
}

const FqContext& FqContext::get(unsigned p, unsigned m) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (m < 1) throw DomainError("extension degree must be >= 1");
  return fq_registry().get(p, default_modulus(p, m));
}

const FqContext& FqContext::of_order(unsigned q) {
  if (q < 2) throw DomainError("field order must be >= 2");
  for (unsigned p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    if (!is_prime(p)) break;
    unsigned m = 0;
    unsigned r = q;
    while (r % p == 0) {
      r /= p;
      ++m;
    }
    if (r != 1) throw DomainError("q = " + std::to_string(q) + " is not a prime power");
    return get(p, m);
  }
  throw DomainError("q = " + std::to_string(q) + " is not a prime power");
}

const FqContext& FqContext::with_modulus(unsigned p, const std::vector<unsigned>& modulus) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  std::vector<unsigned> mod;
  for (auto c : modulus) mod.push_back(c % p);
  if (mod.size() < 2 || mod.back() != 1) throw DomainError("modulus must be monic of degree >= 1");
  if (!is_irreducible(p, mod)) throw DomainError("modulus is reducible over F_p");
  return fq_registry().get(p, std::move(mod));
}

FqContext::FqContext(unsigned p, std::vector<unsigned> modulus)
    : p_(p), m_(static_cast<unsigned>(modulus.size() - 1)), modulus_(std::move(modulus)) {
  unsigned long long q = 1;
  for (unsigned i = 0; i < m_; ++i) {
    pow_p_.push_back(static_cast<std::uint32_t>(q));
    q *= p_;
    if (q > (1ull << 31)) throw DomainError("field too large");
  }
  q_ = static_cast<unsigned>(q);
  if (q_ <= kTableLimit) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    mul_table_.resize(static_cast<std::size_t>(q_) * q_);
    inv_table_.assign(q_, 0);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b) {
        add_table_[a * q_ + b] = static_cast<std::uint16_t>(add_direct(a, b));
        auto prod = mul_direct(a, b);
        mul_table_[a * q_ + b] = static_cast<std::uint16_t>(prod);
        if (prod == 1) inv_table_[a] = static_cast<std::uint16_t>(b);
      }
    tabled_ = true;
  }
  frob_table_.resize(q_ <= (1u << 16) ? q_ : 0);
  for (std::uint32_t a = 0; a < frob_table_.size(); ++a) frob_table_[a] = pow(a, p_);
}

std::vector<unsigned> FqContext::coeffs(std::uint32_t a) const {
  std::vector<unsigned> c(m_);
  for (unsigned i = 0; i < m_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

std::uint32_t FqContext::add_direct(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t r = 0;
  for (unsigned i = 0; i < m_; ++i) {
    r += ((a % p_ + b % p_) % p_) * pow_p_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

std::uint32_t FqContext::mul_direct(std::uint32_t a, std::uint32_t b) const {
  auto ca = coeffs(a), cb = coeffs(b);
  std::vector<unsigned> prod(2 * m_, 0);
  for (unsigned i = 0; i < m_; ++i)
    for (unsigned j = 0; j < m_; ++j)
      prod[i + j] = static_cast<unsigned>((prod[i + j] + static_cast<unsigned long long>(ca[i]) * cb[j]) % p_);
  auto r = poly_mod(prod, modulus_, p_);
  std::uint32_t v = 0;
  for (unsigned i = 0; i < m_ && i < r.size(); ++i) v += r[i] * pow_p_[i];
  return v;
}

std::uint32_t FqContext::add(std::uint32_t a, std::uint32_t b) const {
  if (tabled_) return add_table_[a * q_ + b];
  if (m_ == 1) return (a + b) % p_;
  return add_direct(a, b);
}

std::uint32_t FqContext::neg(std::uint32_t a) const {
  std::uint32_t r = 0;
  for (unsigned i = 0; i < m_; ++i) {
    unsigned c = a % p_;
    r += ((p_ - c) % p_) * pow_p_[i];
    a /= p_;
  }
  return r;
}

std::uint32_t FqContext::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FqContext::mul(std::uint32_t a, std::uint32_t b) const {
  if (tabled_) return mul_table_[a * q_ + b];
  if (m_ == 1) return static_cast<std::uint32_t>(static_cast<unsigned long long>(a) * b % p_);
  return mul_direct(a, b);
}

std::uint32_t FqContext::inv(std::uint32_t a) const {
  if (a == 0) throw DomainError("inverse of zero in " + describe());
  if (tabled_) return inv_table_[a];
  return pow(a, static_cast<unsigned long long>(q_) - 2);
}

std::uint32_t FqContext::pow(std::uint32_t a, unsigned long long e) const {
  std::uint32_t r = 1;
  while (e > 0) {
    if (e & 1u) r = mul(r, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return r;
}

std::uint32_t FqContext::frob(std::uint32_t a, long long k) const {
  long long km = k % static_cast<long long>(m_);
  if (km < 0) km += m_;
  for (long long i = 0; i < km; ++i) a = frob_table_.empty() ? pow(a, p_) : frob_table_[a];
  return a;
}

FqElem FqContext::zero() const { return {this, 0}; }
FqElem FqContext::one() const { return {this, 1}; }
FqElem FqContext::generator() const { return m_ == 1 ? FqElem{this, 1} : FqElem{this, p_}; }

FqElem FqContext::from_index(std::uint32_t index) const {
  if (index >= q_) throw DomainError("field element index " + std::to_string(index) + " out of range for " + describe());
  return {this, index};
}

FqElem FqContext::from_coeffs(const std::vector<unsigned>& coeffs) const {
  if (coeffs.size() > m_) throw DomainError("too many coefficients for " + describe());
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) v += (coeffs[i] % p_) * pow_p_[i];
  return {this, v};
}

FqElem FqContext::from_int(long long k) const {
  long long r = k % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return {this, static_cast<std::uint32_t>(r)};
}

std::vector<FqElem> FqContext::elements() const {
  std::vector<FqElem> out;
  out.reserve(q_);
  for (std::uint32_t a = 0; a < q_; ++a) out.emplace_back(this, a);
  return out;
}

std::string FqContext::describe() const {
  std::ostringstream os;
  os << "F_" << q_;
  if (m_ > 1) {
    os << " = F_" << p_ << "[g]/(";
    bool first = true;
    for (std::size_t i = modulus_.size(); i-- > 0;) {
      if (modulus_[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (modulus_[i] != 1 || i == 0) os << modulus_[i];
      if (i >= 1) os << "g";
      if (i >= 2) os << "^" << i;
    }
    os << ")";
  }
  return os.str();
}

FqElem FqElem::inverse() const { return {ctx_, ctx_->inv(v_)}; }

std::string FqElem::to_string() const {
  if (ctx_->degree() == 1) return std::to_string(v_);
  auto c = coeffs();
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << "]";
  return os.str();
}

}  // namespace wittlab
