#pragma once

#include <random>
#include <string>
#include <vector>

#include "wittlab/finite_field.hpp"
#include "wittlab/int_poly.hpp"
#include "wittlab/laurent.hpp"

namespace wittlab {

enum class RingKind { Fq, FqPoly, FqLaurent };

// The coefficient ring A of W_n(A). FqPoly and FqLaurent both use
// LaurentPoly elements; FqPoly additionally forbids negative exponents.
struct CoeffRing {
  RingKind kind = RingKind::Fq;
  const FqContext* field = nullptr;

  static CoeffRing fq(const FqContext& k) { return {RingKind::Fq, &k}; }
  static CoeffRing poly(const FqContext& k) { return {RingKind::FqPoly, &k}; }
  static CoeffRing laurent(const FqContext& k) { return {RingKind::FqLaurent, &k}; }

  unsigned p() const { return field->characteristic(); }
  unsigned q() const { return field->order(); }
  bool perfect() const { return kind == RingKind::Fq; }
  std::string name() const;

  friend bool operator==(const CoeffRing& a, const CoeffRing& b) { return a.kind == b.kind && a.field == b.field; }
};

// Element of W_n(A). Components are (a_0, ..., a_{n-1}); ring operations
// evaluate the universal polynomials reduced mod p.
//
// Every operator states its level change: V raises the level by one, R and
// the general Frobenius lower it. Operands of binary operations must share
// ring and level; nothing is coerced.
template <class E>
class WittVector {
 public:
  WittVector() = default;
  WittVector(CoeffRing ring, std::vector<E> components);

  static WittVector zero(CoeffRing ring, unsigned n);
  static WittVector one(CoeffRing ring, unsigned n);
  // (a, 0, ..., 0)
  static WittVector teichmuller(CoeffRing ring, const E& a, unsigned n);
  // The image of the integer k under Z -> W_n(A).
  static WittVector from_integer(CoeffRing ring, unsigned n, const BigInt& k);

  const CoeffRing& ring() const { return ring_; }
  unsigned level() const { return static_cast<unsigned>(c_.size()); }
  unsigned prime() const { return ring_.p(); }
  const std::vector<E>& components() const { return c_; }
  const E& operator[](unsigned i) const { return c_[i]; }
  bool is_zero() const;
  // Index of the first nonzero component; level() for zero.
  unsigned valuation() const;

  WittVector operator+(const WittVector& o) const;
  WittVector operator*(const WittVector& o) const;
  WittVector operator-() const;
  WittVector operator-(const WittVector& o) const { return *this + (-o); }
  WittVector& operator+=(const WittVector& o) { return *this = *this + o; }
  WittVector& operator-=(const WittVector& o) { return *this = *this - o; }
  WittVector& operator*=(const WittVector& o) { return *this = *this * o; }

  // Over F_q: component-wise sigma, same level. Otherwise the ghost-shift
  // Frobenius, level n -> n-1.
  WittVector frobenius() const;
  // Ghost-shift Frobenius through the universal F polynomials for any A;
  // level n -> n-1, requires n >= 2.
  WittVector frobenius_general() const;
  // Component-wise sigma^k on F_q coefficients (k may be negative); this is
  // F^k on W_n(F_q).
  WittVector frobenius_power(long long k) const;
  // Level n -> n+1.
  WittVector verschiebung() const;
  // Level n -> m, 1 <= m <= n (m = n is the identity).
  WittVector restrict(unsigned m) const;
  // Appends zero components up to level m >= n. Not a ring map; gives a
  // set-theoretic preimage under restrict.
  WittVector zero_pad(unsigned m) const;
  // Multiplication by the constant p = (0, 1, 0, ...).
  WittVector mul_by_p() const;
  WittVector mul_by_p_power(unsigned k) const;

  std::string to_string() const;

  friend bool operator==(const WittVector& a, const WittVector& b) { return a.ring_ == b.ring_ && a.c_ == b.c_; }

 private:
  void check_compatible(const WittVector& o, const char* op) const;

  CoeffRing ring_;
  std::vector<E> c_;
};

using WittFq = WittVector<FqElem>;
using WittLaurent = WittVector<LaurentPoly>;

// W_n(F_p) -> Z/p^n, x -> w_{n-1}(integer lifts of x) mod p^n. Requires the
// prime field.
BigInt iso_zpn(const WittFq& x);
WittFq iso_zpn_inverse(const FqContext& prime_field, unsigned n, const BigInt& k);

// Ghost components w_0..w_{n-1} of the integer lifts, each reduced mod p^n.
std::vector<BigInt> ghost_vector(const WittFq& x);

// All q^n elements of W_n(F_q), in lexicographic order of component indices.
std::vector<WittFq> all_witt_vectors(const FqContext& k, unsigned n);
// Uniform element of W_n(F_q).
WittFq random_witt(const FqContext& k, unsigned n, std::mt19937_64& rng);

extern template class WittVector<FqElem>;
extern template class WittVector<LaurentPoly>;

}  // namespace wittlab
