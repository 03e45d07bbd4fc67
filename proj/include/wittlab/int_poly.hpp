#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace wittlab {

using BigInt = mpz_class;
using Exponents = std::vector<std::uint32_t>;

// Sparse multivariate polynomial with arbitrary-precision integer
// coefficients. Terms are kept in lexicographic exponent order so that
// iteration, printing and serialization are deterministic.
//
// Invariants: no stored coefficient is zero, every exponent vector has
// exactly variables().size() entries.
class IntPoly {
 public:
  using TermMap = std::map<Exponents, BigInt>;

  IntPoly() = default;
  explicit IntPoly(std::vector<std::string> variables);

  static IntPoly constant(std::vector<std::string> variables, const BigInt& c);
  static IntPoly variable(std::vector<std::string> variables, std::size_t index);

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t num_variables() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Adds c * x^e to the polynomial (merging with an existing term).
  void add_term(const Exponents& e, const BigInt& c);
  BigInt coefficient(const Exponents& e) const;

  IntPoly& operator+=(const IntPoly& other);
  IntPoly& operator-=(const IntPoly& other);
  IntPoly& operator*=(const BigInt& c);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(IntPoly a, const BigInt& c) { return a *= c; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  IntPoly operator-() const;

  IntPoly pow(unsigned e) const;

  // Divides every coefficient by d; throws InternalError if any division
  // leaves a remainder.
  IntPoly divide_exact(const BigInt& d) const;

  // Substitutes subs[i] for variable i. All substitutes must share one
  // variable list, which becomes the variable list of the result.
  IntPoly compose(std::span<const IntPoly> subs) const;

  BigInt evaluate(std::span<const BigInt> values) const;

  // Highest exponent of variable `index` appearing in any term.
  std::uint32_t degree_in(std::size_t index) const;
  std::uint32_t total_degree() const;

  std::string to_string() const;

  friend bool operator==(const IntPoly& a, const IntPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const IntPoly& other) const;

  std::vector<std::string> vars_;
  TermMap terms_;
};

// Variable list X0..X{n-1}, Y0..Y{n-1} shared by every universal Witt
// polynomial of level n.
std::vector<std::string> witt_variables(unsigned n);

}  // namespace wittlab
