#pragma once

#include <map>
#include <string>
#include <vector>

#include "wittlab/witt_vector.hpp"

namespace wittlab {

// Highest V-exponent an OmegaElement may carry (default 32).
unsigned omega_v_cap();
void set_omega_v_cap(unsigned cap);

// Element sum_i a_i V^i of omega = W(F_q)<V> with aV = VF(a), coefficients
// kept at Witt precision m (in W_m(F_q)). Multiplication uses
// (aV^i)(bV^j) = a F^{-i}(b) V^{i+j}.
//
// Invariant: no stored coefficient is zero, and every coefficient has level m.
class OmegaElement {
 public:
  OmegaElement() = default;
  OmegaElement(const FqContext& field, unsigned precision);
  OmegaElement(const FqContext& field, unsigned precision, std::map<unsigned, WittFq> terms);

  static OmegaElement monomial(const WittFq& a, unsigned v_exponent);
  static OmegaElement constant(const WittFq& a) { return monomial(a, 0); }
  static OmegaElement one(const FqContext& field, unsigned precision);
  static OmegaElement V(const FqContext& field, unsigned precision, unsigned power = 1);
  static OmegaElement p(const FqContext& field, unsigned precision, unsigned power = 1);

  const FqContext& field() const { return *field_; }
  unsigned precision() const { return precision_; }
  const std::map<unsigned, WittFq>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  WittFq coefficient(unsigned i) const;
  // Lowest and highest V-exponent with a nonzero coefficient; nonzero only.
  unsigned lowest_exponent() const;
  unsigned degree() const;

  // Restricts every coefficient to precision m <= precision().
  OmegaElement with_precision(unsigned m) const;

  OmegaElement operator+(const OmegaElement& o) const;
  OmegaElement operator-(const OmegaElement& o) const;
  OmegaElement operator*(const OmegaElement& o) const;
  OmegaElement operator-() const;
  // Left W-action a * x.
  OmegaElement left_action(const WittFq& a) const;

  std::string to_string() const;

  friend bool operator==(const OmegaElement& a, const OmegaElement& b) {
    return a.field_ == b.field_ && a.precision_ == b.precision_ && a.terms_ == b.terms_;
  }

 private:
  void canonicalize();
  static void unify(OmegaElement& a, OmegaElement& b);

  const FqContext* field_ = nullptr;
  unsigned precision_ = 0;
  std::map<unsigned, WittFq> terms_;
};

// Element of omega_n, stored as slots a_i in W_{n-i}(F_q) for 0 <= i < n.
// omega_n is the quotient of omega by the two-sided ideal spanned by
// p^{n-i} W V^i (i < n) and V^j (j >= n), which gives one slot per V-power.
class OmegaTrunc {
 public:
  OmegaTrunc() = default;
  OmegaTrunc(const FqContext& field, std::vector<WittFq> slots);

  static OmegaTrunc zero(const FqContext& field, unsigned n);
  // Image of x, dropping V^i for i >= n and restricting slot i to level n-i.
  static OmegaTrunc project(const OmegaElement& x, unsigned n);

  const FqContext& field() const { return *field_; }
  unsigned level() const { return static_cast<unsigned>(slots_.size()); }
  const std::vector<WittFq>& slots() const { return slots_; }
  const WittFq& slot(unsigned i) const { return slots_[i]; }
  bool is_zero() const;

  // A preimage in omega at coefficient precision n (slots zero-padded).
  OmegaElement lift() const;

  OmegaTrunc operator+(const OmegaTrunc& o) const;
  OmegaTrunc operator-(const OmegaTrunc& o) const;
  OmegaTrunc operator-() const;
  // a * x for a in W_n(F_q) (or any level >= n, restricted slot-wise).
  OmegaTrunc left_action(const WittFq& a) const;
  // Right omega-action: x * y computed as project(lift(x) * y).
  OmegaTrunc right_action(const OmegaElement& y) const;

  // Slot-wise R to omega_{n-1}, dropping slot n-1. Requires n >= 2.
  OmegaTrunc pi() const;
  // Slot-wise multiplication by p into omega_{n+1}.
  OmegaTrunc rho() const;

  std::string to_string() const;

  friend bool operator==(const OmegaTrunc& a, const OmegaTrunc& b) {
    return a.field_ == b.field_ && a.slots_ == b.slots_;
  }

 private:
  void check_compatible(const OmegaTrunc& o) const;

  const FqContext* field_ = nullptr;
  std::vector<WittFq> slots_;
};

// Every element of omega_n over F_q; there are q^{n(n+1)/2}.
std::vector<OmegaTrunc> all_omega_trunc(const FqContext& field, unsigned n);
OmegaTrunc random_omega_trunc(const FqContext& field, unsigned n, std::mt19937_64& rng);
// Random element with V-degree <= max_degree; each coefficient is zero with
// probability 1/3.
OmegaElement random_omega(const FqContext& field, unsigned precision, unsigned max_degree, std::mt19937_64& rng);

}  // namespace wittlab
