#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/finite_field.hpp"

namespace wittlab {

// Element of F_q[t, t^{-1}]; polynomials in F_q[t] are the case
// lowest_exponent() >= 0. Stored as a dense coefficient run starting at
// the lowest exponent.
//
// Invariant: the first and last stored coefficients are nonzero; zero is the
// empty run with lowest exponent 0.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const FqContext& ctx) : ctx_(&ctx) {}
  LaurentPoly(const FqContext& ctx, std::int64_t lowest, std::vector<std::uint32_t> coeffs);

  static LaurentPoly monomial(FqElem c, std::int64_t exponent);
  static LaurentPoly constant(FqElem c) { return monomial(c, 0); }
  static LaurentPoly t_power(const FqContext& ctx, std::int64_t exponent) { return monomial(ctx.one(), exponent); }

  const FqContext& context() const { return *ctx_; }
  const FqContext* context_ptr() const { return ctx_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return low_ == 0 && c_.size() == 1 && c_[0] == 1; }
  std::int64_t lowest_exponent() const { return low_; }
  // Only meaningful for nonzero values.
  std::int64_t highest_exponent() const { return low_ + static_cast<std::int64_t>(c_.size()) - 1; }
  FqElem coefficient(std::int64_t e) const;
  // Nonzero (exponent, coefficient) pairs in increasing exponent order.
  std::vector<std::pair<std::int64_t, FqElem>> terms() const;
  std::size_t num_terms() const;
  bool is_monomial() const { return c_.size() == 1; }

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  LaurentPoly scale(FqElem c) const;

  // x^p: coefficients to the p-th power, exponents times p.
  LaurentPoly pth_power() const;
  LaurentPoly pow(unsigned long long e) const;
  // sigma^k applied to every coefficient, exponents unchanged.
  LaurentPoly frobenius_coefficients(long long k) const;
  // Image under t -> t^{-1}.
  LaurentPoly invert_variable() const;

  // True when x lies in t^k F_q[t] (zero is divisible by everything).
  bool divisible_by_t_power(std::int64_t k) const { return is_zero() || low_ >= k; }

  std::string to_string() const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.low_ == b.low_ && a.c_ == b.c_ && (a.c_.empty() || a.ctx_ == b.ctx_);
  }

 private:
  void normalize();
  void check_context(const LaurentPoly& o) const;

  const FqContext* ctx_ = nullptr;
  std::int64_t low_ = 0;
  std::vector<std::uint32_t> c_;
};

}  // namespace wittlab
