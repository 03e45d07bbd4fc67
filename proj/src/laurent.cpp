#include "wittlab/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "wittlab/errors.hpp"

namespace wittlab {

LaurentPoly::LaurentPoly(const FqContext& ctx, std::int64_t lowest, std::vector<std::uint32_t> coeffs)
    : ctx_(&ctx), low_(lowest), c_(std::move(coeffs)) {
  for (auto v : c_)
    if (v >= ctx.order()) throw DomainError("Laurent coefficient out of range for " + ctx.describe());
  normalize();
}

LaurentPoly LaurentPoly::monomial(FqElem c, std::int64_t exponent) {
  LaurentPoly r(c.context());
  if (!c.is_zero()) {
    r.low_ = exponent;
    r.c_.push_back(c.index());
  }
  return r;
}

void LaurentPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<std::int64_t>(lead);
  }
  if (c_.empty()) low_ = 0;
}

void LaurentPoly::check_context(const LaurentPoly& o) const {
  if (ctx_ != o.ctx_ && ctx_ != nullptr && o.ctx_ != nullptr)
    throw DomainError("Laurent polynomials over different fields: " + ctx_->describe() + " vs " + o.ctx_->describe());
}

FqElem LaurentPoly::coefficient(std::int64_t e) const {
  if (c_.empty() || e < low_ || e > highest_exponent()) return ctx_->zero();
  return {ctx_, c_[static_cast<std::size_t>(e - low_)]};
}

std::vector<std::pair<std::int64_t, FqElem>> LaurentPoly::terms() const {
  std::vector<std::pair<std::int64_t, FqElem>> out;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) out.emplace_back(low_ + static_cast<std::int64_t>(i), FqElem{ctx_, c_[i]});
  return out;
}

std::size_t LaurentPoly::num_terms() const {
  return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](auto v) { return v != 0; }));
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  check_context(o);
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  LaurentPoly r(*ctx_);
  r.low_ = std::min(low_, o.low_);
  const std::int64_t high = std::max(highest_exponent(), o.highest_exponent());
  r.c_.assign(static_cast<std::size_t>(high - r.low_ + 1), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[static_cast<std::size_t>(low_ - r.low_) + i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    auto& slot = r.c_[static_cast<std::size_t>(o.low_ - r.low_) + i];
    slot = ctx_->add(slot, o.c_[i]);
  }
  r.normalize();
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& v : r.c_) v = ctx_->neg(v);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  check_context(o);
  const FqContext* ctx = ctx_ ? ctx_ : o.ctx_;
  if (is_zero() || o.is_zero()) return ctx ? LaurentPoly(*ctx) : LaurentPoly();
  LaurentPoly r(*ctx_);
  r.low_ = low_ + o.low_;
  r.c_.assign(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      auto& slot = r.c_[i + j];
      slot = ctx_->add(slot, ctx_->mul(c_[i], o.c_[j]));
    }
  }
  r.normalize();
  return r;
}

LaurentPoly LaurentPoly::scale(FqElem c) const {
  if (c.is_zero()) return LaurentPoly(*ctx_);
  LaurentPoly r = *this;
  for (auto& v : r.c_) v = ctx_->mul(v, c.index());
  return r;
}

LaurentPoly LaurentPoly::pth_power() const {
  if (is_zero()) return *this;
  const unsigned p = ctx_->characteristic();
  LaurentPoly r(*ctx_);
  r.low_ = low_ * p;
  r.c_.assign((c_.size() - 1) * p + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * p] = ctx_->frob(c_[i], 1);
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned long long e) const {
  const unsigned p = ctx_->characteristic();
  LaurentPoly result = constant(ctx_->one());
  LaurentPoly base = *this;  // this^{p^i}
  while (e > 0) {
    unsigned digit = static_cast<unsigned>(e % p);
    e /= p;
    if (digit > 0) {
      LaurentPoly part = base;
      for (unsigned k = 1; k < digit; ++k) part = part * base;
      result = result * part;
    }
    if (e > 0) base = base.pth_power();
  }
  return result;
}

LaurentPoly LaurentPoly::frobenius_coefficients(long long k) const {
  LaurentPoly r = *this;
  for (auto& v : r.c_) v = ctx_->frob(v, k);
  return r;
}

LaurentPoly LaurentPoly::invert_variable() const {
  if (is_zero()) return *this;
  LaurentPoly r(*ctx_);
  r.low_ = -highest_exponent();
  r.c_.assign(c_.rbegin(), c_.rend());
  return r;
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.size(); it-- > 0;) {
    if (c_[it] == 0) continue;
    const std::int64_t e = low_ + static_cast<std::int64_t>(it);
    FqElem c{ctx_, c_[it]};
    if (!first) os << " + ";
    first = false;
    const bool show_coeff = !c.is_one() || e == 0;
    if (show_coeff) os << c.to_string();
    if (e != 0) {
      if (show_coeff) os << "*";
      os << "t";
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

}  // namespace wittlab
