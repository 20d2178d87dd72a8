#ifndef POLYSIZE_POLY_H
#define POLYSIZE_POLY_H

#include <gmpxx.h>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace polysize {

// Exact rationals. mpq_class keeps values canonical (reduced, positive
// denominator) after every arithmetic operation.
using Rational = mpq_class;

std::string to_string(const Rational& q);
bool is_integer(const Rational& q);

// Orders variable names alphabetically, comparing trailing digit runs
// numerically so that n2 < n10.
struct VarLess {
  bool operator()(const std::string& a, const std::string& b) const;
};

using VarSet = std::set<std::string, VarLess>;

// A product of variables raised to positive exponents. The empty monomial
// is the constant term.
class Monomial {
 public:
  using Powers = std::map<std::string, unsigned, VarLess>;

  Monomial() = default;
  static Monomial var(const std::string& name, unsigned exponent = 1);

  const Powers& powers() const { return powers_; }
  unsigned exponent(const std::string& name) const;
  unsigned degree() const;
  bool is_constant() const { return powers_.empty(); }

  Monomial operator*(const Monomial& other) const;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string to_string() const;

 private:
  Powers powers_;
};

// Graded lexicographic order, largest monomial first.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using Valuation = std::map<std::string, Rational>;

// Multivariate polynomial with exact rational coefficients. Zero coefficients
// are never stored, so two polynomials are equal iff their term maps are.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexGreater>;

  Polynomial() = default;
  static Polynomial constant(const Rational& c);
  static Polynomial variable(const std::string& name);
  static Polynomial term(const Rational& c, const Monomial& m);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<Rational> as_constant() const;
  Rational coefficient(const Monomial& m) const;
  // Total degree; the zero polynomial has degree 0.
  unsigned degree() const;
  VarSet variables() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    return a += b;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    return a -= b;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial pow(unsigned exponent) const;

  // Throws UnboundSizeVariable if a variable of the polynomial is missing
  // from the point.
  Rational evaluate(const Valuation& point) const;

  // Simultaneous substitution; unmapped variables stay.
  Polynomial substitute(const std::map<std::string, Polynomial>& subst) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  // "1/2*n^2 + 1/2*n", graded lexicographic.
  std::string to_string() const;
  // Inverse of to_string; also accepts parentheses and "/" by constants.
  static Polynomial parse(std::string_view text);

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

// Every monomial of total degree <= degree over `vars`, in graded
// lexicographic order, smallest first.
std::vector<Monomial> monomials_up_to(const std::vector<std::string>& vars,
                                      unsigned degree);

}  // namespace polysize

#endif  // POLYSIZE_POLY_H
