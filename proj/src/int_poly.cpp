#include "wittlab/int_poly.hpp"

#include <sstream>
#include <unordered_map>

#include "wittlab/errors.hpp"

namespace wittlab {

namespace {

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : e) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

IntPoly::IntPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {}

IntPoly IntPoly::constant(std::vector<std::string> variables, const BigInt& c) {
  IntPoly r(std::move(variables));
  r.add_term(Exponents(r.vars_.size(), 0), c);
  return r;
}

IntPoly IntPoly::variable(std::vector<std::string> variables, std::size_t index) {
  IntPoly r(std::move(variables));
  if (index >= r.vars_.size()) throw DomainError("IntPoly::variable: index out of range");
  Exponents e(r.vars_.size(), 0);
  e[index] = 1;
  r.add_term(e, 1);
  return r;
}

void IntPoly::add_term(const Exponents& e, const BigInt& c) {
  if (e.size() != vars_.size()) throw DomainError("IntPoly: exponent vector length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BigInt IntPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void IntPoly::check_compatible(const IntPoly& other) const {
  if (vars_ != other.vars_) throw DomainError("IntPoly: variable lists differ");
}

IntPoly& IntPoly::operator+=(const IntPoly& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) {
    BigInt neg = -c;
    add_term(e, neg);
  }
  return *this;
}

IntPoly& IntPoly::operator*=(const BigInt& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  a.check_compatible(b);
  std::unordered_map<Exponents, BigInt, ExponentsHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  Exponents e(a.vars_.size());
  BigInt prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      prod = ca * cb;
      auto [it, inserted] = acc.try_emplace(e, prod);
      if (!inserted) it->second += prod;
    }
  }
  IntPoly r(a.vars_);
  for (auto& [exp, c] : acc)
    if (c != 0) r.terms_.emplace(exp, std::move(c));
  return r;
}

IntPoly IntPoly::operator-() const {
  IntPoly r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

IntPoly IntPoly::pow(unsigned e) const {
  IntPoly result = constant(vars_, 1);
  IntPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

IntPoly IntPoly::divide_exact(const BigInt& d) const {
  if (d == 0) throw InternalError("IntPoly::divide_exact: division by zero");
  IntPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t())) {
      std::ostringstream os;
      os << "IntPoly::divide_exact: coefficient " << c << " not divisible by " << d;
      throw InternalError(os.str());
    }
    BigInt q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    r.terms_.emplace(e, std::move(q));
  }
  return r;
}

IntPoly IntPoly::compose(std::span<const IntPoly> subs) const {
  if (subs.size() != vars_.size()) throw DomainError("IntPoly::compose: substitution count mismatch");
  if (subs.empty()) return *this;
  const auto& target_vars = subs[0].variables();
  for (const auto& s : subs)
    if (s.variables() != target_vars) throw DomainError("IntPoly::compose: substitutes disagree on variables");

  // Powers of each substitute, filled on demand.
  std::vector<std::map<std::uint32_t, IntPoly>> powers(subs.size());
  auto power_of = [&](std::size_t v, std::uint32_t k) -> const IntPoly& {
    auto it = powers[v].find(k);
    if (it != powers[v].end()) return it->second;
    return powers[v].emplace(k, subs[v].pow(k)).first->second;
  };

  IntPoly result(target_vars);
  for (const auto& [e, c] : terms_) {
    IntPoly term = constant(target_vars, c);
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v] != 0) term = term * power_of(v, e[v]);
    result += term;
  }
  return result;
}

BigInt IntPoly::evaluate(std::span<const BigInt> values) const {
  if (values.size() != vars_.size()) throw DomainError("IntPoly::evaluate: value count mismatch");
  BigInt acc = 0;
  BigInt term, pw;
  for (const auto& [e, c] : terms_) {
    term = c;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      mpz_pow_ui(pw.get_mpz_t(), values[v].get_mpz_t(), e[v]);
      term *= pw;
    }
    acc += term;
  }
  return acc;
}

std::uint32_t IntPoly::degree_in(std::size_t index) const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(index));
  return d;
}

std::uint32_t IntPoly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) {
    std::uint32_t s = 0;
    for (auto x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

std::string IntPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Print highest degree terms first; map order is ascending.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = false;
    for (auto x : e) has_var |= (x != 0);
    if (mag != 1 || !has_var) {
      os << mag;
      if (has_var) os << "*";
    }
    bool first_var = true;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << vars_[v];
      if (e[v] > 1) os << "^" << e[v];
    }
  }
  return os.str();
}

std::vector<std::string> witt_variables(unsigned n) {
  std::vector<std::string> v;
  v.reserve(2 * n);
  for (unsigned i = 0; i < n; ++i) v.push_back("X" + std::to_string(i));
  for (unsigned i = 0; i < n; ++i) v.push_back("Y" + std::to_string(i));
  return v;
}

}  // namespace wittlab
