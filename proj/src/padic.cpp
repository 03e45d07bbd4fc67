#include "wittlab/padic.hpp"

#include <algorithm>
#include <sstream>

#include "wittlab/chain.hpp"
#include "wittlab/errors.hpp"

namespace wittlab {

PAdicApprox PAdicApprox::exact_zero(const FqContext& field) {
  PAdicApprox r;
  r.field_ = &field;
  return r;
}

PAdicApprox PAdicApprox::zero_mod(const FqContext& field, std::int64_t absolute_precision) {
  PAdicApprox r;
  r.field_ = &field;
  r.abs_ = std::min(absolute_precision, kExactPrecision);
  return r;
}

PAdicApprox PAdicApprox::from_unit(std::int64_t v, const WittFq& unit) {
  if (unit[0].is_zero()) throw DomainError("PAdicApprox mantissa must be a unit");
  PAdicApprox r;
  r.field_ = unit.ring().field;
  r.zero_ = false;
  r.v_ = v;
  r.u_ = unit;
  r.abs_ = 0;
  return r;
}

PAdicApprox PAdicApprox::from_witt(const WittFq& x, std::int64_t shift) {
  const unsigned val = x.valuation();
  if (val >= x.level()) return zero_mod(*x.ring().field, shift + x.level());
  return from_unit(shift + val, unit_part(x).restrict(x.level() - val));
}

PAdicApprox PAdicApprox::p_power(const FqContext& field, std::int64_t v, unsigned m) {
  return from_unit(v, WittFq::one(CoeffRing::fq(field), m));
}

std::int64_t PAdicApprox::valuation() const {
  if (zero_) throw DomainError("valuation of a zero p-adic value");
  return v_;
}

namespace {

// p^{shift} * u restricted to relative length len, as an element of W_len.
WittFq aligned(const PAdicApprox& x, std::int64_t vmin, std::int64_t len) {
  const FqContext& k = x.field();
  const unsigned L = static_cast<unsigned>(len);
  if (x.is_zero()) return WittFq::zero(CoeffRing::fq(k), L);
  const std::int64_t shift = x.valuation() - vmin;
  if (shift >= len) return WittFq::zero(CoeffRing::fq(k), L);
  const unsigned keep = static_cast<unsigned>(len - shift);
  return x.mantissa().restrict(keep).zero_pad(L).mul_by_p_power(static_cast<unsigned>(shift));
}

}  // namespace

PAdicApprox PAdicApprox::operator+(const PAdicApprox& o) const {
  if (field_ != o.field_) throw DomainError("p-adic values over different fields");
  const std::int64_t A = std::min(absolute_precision(), o.absolute_precision());
  if (zero_ && o.zero_) return zero_mod(*field_, A);
  std::int64_t vmin = kExactPrecision;
  if (!zero_) vmin = std::min(vmin, v_);
  if (!o.zero_) vmin = std::min(vmin, o.v_);
  if (A <= vmin) return zero_mod(*field_, A);
  const std::int64_t len = A - vmin;
  const WittFq s = aligned(*this, vmin, len) + aligned(o, vmin, len);
  const unsigned k = s.valuation();
  if (k >= s.level()) return zero_mod(*field_, A);
  return from_unit(vmin + k, unit_part(s).restrict(s.level() - k));
}

PAdicApprox PAdicApprox::operator-() const {
  if (zero_) return *this;
  PAdicApprox r = *this;
  r.u_ = -u_;
  return r;
}

PAdicApprox PAdicApprox::operator*(const PAdicApprox& o) const {
  if (field_ != o.field_) throw DomainError("p-adic values over different fields");
  if (is_exact_zero() || o.is_exact_zero()) return exact_zero(*field_);
  if (zero_ && o.zero_) return zero_mod(*field_, abs_ + o.abs_);
  if (zero_) return zero_mod(*field_, abs_ + o.v_);
  if (o.zero_) return zero_mod(*field_, o.abs_ + v_);
  const unsigned m = std::min(u_.level(), o.u_.level());
  return from_unit(v_ + o.v_, u_.restrict(m) * o.u_.restrict(m));
}

PAdicApprox PAdicApprox::operator/(const PAdicApprox& o) const {
  if (field_ != o.field_) throw DomainError("p-adic values over different fields");
  if (o.zero_) throw DomainError("division by a p-adic zero");
  if (is_exact_zero()) return *this;
  if (zero_) return zero_mod(*field_, abs_ - o.v_);
  const unsigned m = std::min(u_.level(), o.u_.level());
  return from_unit(v_ - o.v_, u_.restrict(m) * unit_inverse(o.u_.restrict(m)));
}

PAdicApprox PAdicApprox::frobenius_power(long long k) const {
  if (zero_) return *this;
  PAdicApprox r = *this;
  r.u_ = u_.frobenius_power(k);
  return r;
}

PAdicApprox PAdicApprox::principal_part() const {
  if (zero_) return abs_ >= 0 ? exact_zero(*field_) : *this;
  if (v_ >= 0) return exact_zero(*field_);
  const unsigned keep = static_cast<unsigned>(std::min<std::int64_t>(u_.level(), -v_));
  return from_unit(v_, u_.restrict(keep));
}

PAdicApprox PAdicApprox::truncated(unsigned m) const {
  if (zero_ || u_.level() <= m) return *this;
  if (m == 0) return zero_mod(*field_, v_);
  return from_unit(v_, u_.restrict(m));
}

WittFq PAdicApprox::to_witt(unsigned level) const {
  const CoeffRing ring = CoeffRing::fq(*field_);
  if (zero_) {
    if (abs_ < static_cast<std::int64_t>(level))
      throw PrecisionError("zero known only modulo p^" + std::to_string(abs_));
    return WittFq::zero(ring, level);
  }
  if (v_ < 0) throw DomainError("non-integral value " + to_string() + " has no Witt representative");
  if (v_ >= static_cast<std::int64_t>(level)) return WittFq::zero(ring, level);
  if (absolute_precision() < static_cast<std::int64_t>(level))
    throw PrecisionError("value known only modulo p^" + std::to_string(absolute_precision()));
  return u_.restrict(level - static_cast<unsigned>(v_)).zero_pad(level).mul_by_p_power(static_cast<unsigned>(v_));
}

std::string PAdicApprox::to_string() const {
  std::ostringstream os;
  if (zero_) {
    if (is_exact_zero())
      os << "0";
    else
      os << "O(p^" << abs_ << ")";
    return os.str();
  }
  if (v_ != 0) os << "p^" << v_ << "*";
  os << u_.to_string();
  return os.str();
}

}  // namespace wittlab
