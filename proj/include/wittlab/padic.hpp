#pragma once

#include <cstdint>
#include <string>

#include "wittlab/witt_vector.hpp"

namespace wittlab {

// An element of W_Q = W(F_q)[1/p] known to finite precision.
//
// A nonzero value is p^v * u with u a unit of W(F_q) known modulo p^m
// (mantissa in W_m(F_q), first component nonzero); it is then known modulo
// p^{v+m}. A zero value is known only to be divisible by p^A, where A is its
// absolute precision; exact zero uses A = kExactPrecision.
class PAdicApprox {
 public:
  static constexpr std::int64_t kExactPrecision = std::int64_t{1} << 40;

  PAdicApprox() = default;
  static PAdicApprox exact_zero(const FqContext& field);
  static PAdicApprox zero_mod(const FqContext& field, std::int64_t absolute_precision);
  // p^v * unit; unit must have a nonzero first component.
  static PAdicApprox from_unit(std::int64_t v, const WittFq& unit);
  // p^shift * x for x in W_m(F_q) known modulo p^m.
  static PAdicApprox from_witt(const WittFq& x, std::int64_t shift = 0);
  // p^v known to relative precision m.
  static PAdicApprox p_power(const FqContext& field, std::int64_t v, unsigned m);

  const FqContext& field() const { return *field_; }
  bool is_zero() const { return zero_; }
  bool is_exact_zero() const { return zero_ && abs_ >= kExactPrecision; }
  // Valuation of a nonzero value.
  std::int64_t valuation() const;
  const WittFq& mantissa() const { return u_; }
  unsigned relative_precision() const { return zero_ ? 0 : u_.level(); }
  std::int64_t absolute_precision() const { return zero_ ? abs_ : v_ + static_cast<std::int64_t>(u_.level()); }
  bool is_integral() const { return zero_ ? true : v_ >= 0; }

  PAdicApprox operator+(const PAdicApprox& o) const;
  PAdicApprox operator-(const PAdicApprox& o) const { return *this + (-o); }
  PAdicApprox operator-() const;
  PAdicApprox operator*(const PAdicApprox& o) const;
  // Requires a nonzero divisor.
  PAdicApprox operator/(const PAdicApprox& o) const;
  // sigma^k on the mantissa; the valuation is fixed.
  PAdicApprox frobenius_power(long long k) const;
  // Class in W_Q/W: the digits below p^0. Integral values give exact zero.
  PAdicApprox principal_part() const;
  // Same value with relative precision capped at m.
  PAdicApprox truncated(unsigned m) const;
  // The value as an element of W_level(F_q); requires integrality and
  // enough absolute precision.
  WittFq to_witt(unsigned level) const;

  std::string to_string() const;

 private:
  const FqContext* field_ = nullptr;
  bool zero_ = true;
  std::int64_t v_ = 0;
  std::int64_t abs_ = kExactPrecision;
  WittFq u_;
};

}  // namespace wittlab
