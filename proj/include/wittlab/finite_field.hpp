#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wittlab {

class FqElem;

// The field F_q = F_p[x]/(modulus), q = p^m. Contexts are interned: get()
// returns the same object for the same (p, modulus), lives for the rest of
// the process and may be shared freely between threads.
//
// Elements are stored as packed indices sum_i c_i p^i of their coefficient
// vectors (c_0 + c_1 g + ... with g the class of x).
class FqContext {
 public:
  // Built-in moduli: x for m = 1 (prime field), and
  //   q=4: x^2+x+1     q=8: x^3+x+1     q=9: x^2+2x+2    q=16: x^4+x+1
  // (the Conway polynomials for these q).
  static const FqContext& get(unsigned p, unsigned m = 1);
  // Field of order q using the built-in modulus.
  static const FqContext& of_order(unsigned q);
  // User-supplied monic modulus, lowest coefficient first, of degree m.
  // Throws DomainError unless it is irreducible over F_p.
  static const FqContext& with_modulus(unsigned p, const std::vector<unsigned>& modulus);

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return m_; }
  unsigned order() const { return q_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }

  FqElem zero() const;
  FqElem one() const;
  FqElem generator() const;
  FqElem from_index(std::uint32_t index) const;
  FqElem from_coeffs(const std::vector<unsigned>& coeffs) const;
  // Image of an integer under Z -> F_p -> F_q.
  FqElem from_int(long long k) const;
  std::vector<FqElem> elements() const;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, unsigned long long e) const;
  // sigma^k(a) = a^{p^k}; k may be negative (sigma has order m).
  std::uint32_t frob(std::uint32_t a, long long k) const;

  std::vector<unsigned> coeffs(std::uint32_t a) const;
  std::string describe() const;

  FqContext(const FqContext&) = delete;
  FqContext& operator=(const FqContext&) = delete;

 private:
  FqContext(unsigned p, std::vector<unsigned> modulus);
  std::uint32_t mul_direct(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t add_direct(std::uint32_t a, std::uint32_t b) const;

  unsigned p_;
  unsigned m_;
  unsigned q_;
  std::vector<unsigned> modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^i
  std::vector<std::uint16_t> add_table_, mul_table_, inv_table_;
  std::vector<std::uint32_t> frob_table_;  // frob_table_[a] = a^p
  bool tabled_ = false;

  friend struct FqRegistry;
};

// Irreducibility test by trial division against every monic polynomial of
// degree <= m/2. Coefficients lowest first.
bool is_irreducible(unsigned p, const std::vector<unsigned>& poly);

class FqElem {
 public:
  FqElem() = default;
  FqElem(const FqContext* ctx, std::uint32_t v) : ctx_(ctx), v_(v) {}

  const FqContext& context() const { return *ctx_; }
  const FqContext* context_ptr() const { return ctx_; }
  std::uint32_t index() const { return v_; }
  std::vector<unsigned> coeffs() const { return ctx_->coeffs(v_); }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  FqElem operator+(FqElem o) const { return {ctx_, ctx_->add(v_, o.v_)}; }
  FqElem operator-(FqElem o) const { return {ctx_, ctx_->sub(v_, o.v_)}; }
  FqElem operator*(FqElem o) const { return {ctx_, ctx_->mul(v_, o.v_)}; }
  FqElem operator-() const { return {ctx_, ctx_->neg(v_)}; }
  FqElem& operator+=(FqElem o) { return *this = *this + o; }
  FqElem& operator-=(FqElem o) { return *this = *this - o; }
  FqElem& operator*=(FqElem o) { return *this = *this * o; }
  FqElem inverse() const;
  FqElem pow(unsigned long long e) const { return {ctx_, ctx_->pow(v_, e)}; }

  // sigma(x) = x^p and its inverse sigma^{m-1}.
  FqElem frobenius() const { return {ctx_, ctx_->frob(v_, 1)}; }
  FqElem frobenius_inverse() const { return {ctx_, ctx_->frob(v_, -1)}; }
  FqElem frobenius_power(long long k) const { return {ctx_, ctx_->frob(v_, k)}; }

  std::string to_string() const;

  friend bool operator==(FqElem a, FqElem b) { return a.ctx_ == b.ctx_ && a.v_ == b.v_; }
  friend bool operator<(FqElem a, FqElem b) { return a.v_ < b.v_; }

 private:
  const FqContext* ctx_ = nullptr;
  std::uint32_t v_ = 0;
};

}  // namespace wittlab
