#include "polysize/poly.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "polysize/errors.h"

namespace polysize {

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_integer(const Rational& q) {
  return mpz_divisible_p(q.get_num_mpz_t(), q.get_den_mpz_t()) != 0;
}

namespace {

std::pair<std::string_view, std::string_view> split_digits(
    std::string_view s) {
  std::size_t cut = s.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(s[cut - 1])))
    --cut;
  return {s.substr(0, cut), s.substr(cut)};
}

Rational rational_pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace

bool VarLess::operator()(const std::string& a, const std::string& b) const {
  auto [pa, da] = split_digits(a);
  auto [pb, db] = split_digits(b);
  if (pa != pb) return pa < pb;
  // Compare digit runs numerically: shorter (after leading zeros) is smaller.
  auto strip = [](std::string_view d) {
    while (d.size() > 1 && d.front() == '0') d.remove_prefix(1);
    return d;
  };
  std::string_view sa = strip(da);
  std::string_view sb = strip(db);
  if (sa.size() != sb.size()) return sa.size() < sb.size();
  if (sa != sb) return sa < sb;
  return da < db;
}

Monomial Monomial::var(const std::string& name, unsigned exponent) {
  Monomial m;
  if (exponent > 0) m.powers_[name] = exponent;
  return m;
}

unsigned Monomial::exponent(const std::string& name) const {
  auto it = powers_.find(name);
  return it == powers_.end() ? 0 : it->second;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& [_, e] : powers_) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out = *this;
  for (const auto& [v, e] : other.powers_) out.powers_[v] += e;
  return out;
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& [v, e] : powers_) {
    if (!out.empty()) out += '*';
    out += v;
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = a.degree();
  unsigned db = b.degree();
  if (da != db) return da > db;
  // Walk the union of variables in increasing name order; the first
  // differing exponent decides.
  auto ia = a.powers().begin();
  auto ib = b.powers().begin();
  VarLess less;
  while (ia != a.powers().end() || ib != b.powers().end()) {
    if (ib == b.powers().end() ||
        (ia != a.powers().end() && less(ia->first, ib->first)))
      return true;  // a has a variable b lacks
    if (ia == a.powers().end() || less(ib->first, ia->first)) return false;
    if (ia->second != ib->second) return ia->second > ib->second;
    ++ia;
    ++ib;
  }
  return false;
}

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  p.add_term(Monomial{}, c);
  return p;
}

Polynomial Polynomial::variable(const std::string& name) {
  return term(1, Monomial::var(name));
}

Polynomial Polynomial::term(const Rational& c, const Monomial& m) {
  Polynomial p;
  p.add_term(m, c);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& raw) {
  // mpq_class(num, den) is not reduced on construction.
  Rational c = raw;
  c.canonicalize();
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

std::optional<Rational> Polynomial::as_constant() const {
  if (terms_.empty()) return Rational(0);
  if (is_constant()) return terms_.begin()->second;
  return std::nullopt;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

VarSet Polynomial::variables() const {
  VarSet vars;
  for (const auto& [m, _] : terms_)
    for (const auto& [v, e] : m.powers()) vars.insert(v);
  return vars;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [_, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial out = constant(1);
  for (unsigned i = 0; i < exponent; ++i) out = out * *this;
  return out;
}

Rational Polynomial::evaluate(const Valuation& point) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m.powers()) {
      auto it = point.find(v);
      if (it == point.end()) throw UnboundSizeVariable(v);
      t *= rational_pow(it->second, e);
    }
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::substitute(
    const std::map<std::string, Polynomial>& subst) const {
  if (subst.empty()) return *this;
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial t = constant(c);
    Monomial kept;
    for (const auto& [v, e] : m.powers()) {
      auto it = subst.find(v);
      if (it == subst.end()) {
        kept = kept * Monomial::var(v, e);
      } else {
        t = t * it->second.pow(e);
      }
    }
    out += t * term(1, kept);
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (m.is_constant()) {
      out << polysize::to_string(mag);
    } else if (mag == 1) {
      out << m.to_string();
    } else {
      out << polysize::to_string(mag) << '*' << m.to_string();
    }
  }
  return out.str();
}

std::vector<Monomial> monomials_up_to(const std::vector<std::string>& vars,
                                      unsigned degree) {
  std::vector<Monomial> out;
  std::function<void(std::size_t, unsigned, Monomial)> rec =
      [&](std::size_t idx, unsigned left, Monomial acc) {
        if (idx == vars.size()) {
          out.push_back(acc);
          return;
        }
        for (unsigned e = 0; e <= left; ++e)
          rec(idx + 1, left - e, acc * Monomial::var(vars[idx], e));
      };
  rec(0, degree, Monomial{});
  GrlexGreater greater;
  std::sort(out.begin(), out.end(),
            [&](const Monomial& a, const Monomial& b) { return greater(b, a); });
  return out;
}

}  // namespace polysize
