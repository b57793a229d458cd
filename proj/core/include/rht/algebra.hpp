#pragma once

#include "rht/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rht {

// A generator of a free graded-commutative algebra: a name and a degree.
// Generators are ordered by (degree, name); this fixes the canonical order of
// factors inside monomials and hence all Koszul signs.
struct Generator {
  std::string name;
  int degree = 0;

  bool is_odd() const { return degree % 2 != 0; }

  friend bool operator==(const Generator& a, const Generator& b) {
    return a.degree == b.degree && a.name == b.name;
  }
  friend bool operator!=(const Generator& a, const Generator& b) { return !(a == b); }
  friend bool operator<(const Generator& a, const Generator& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.name < b.name;
  }
};

// A monomial: product of generator powers, factors sorted by generator order.
// Odd generators never carry exponent > 1 (they square to zero).
class Monomial {
 public:
  using Factor = std::pair<Generator, int>;  // (generator, exponent >= 1)

  Monomial() = default;  // the unit monomial "1"

  static Monomial unit() { return Monomial(); }
  static Monomial of(const Generator& g, int exp = 1) {
    Monomial m;
    if (exp > 0) m.factors_.push_back({g, exp});
    return m;
  }
  // Build from possibly unsorted factors; returns nullopt when an odd
  // generator would be squared.
  static std::optional<Monomial> from_factors(std::vector<Factor> fs);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& [g, e] : factors_) d += g.degree * e;
    return d;
  }

  int exponent_of(const Generator& g) const {
    for (const auto& [h, e] : factors_)
      if (h == g) return e;
    return 0;
  }

  bool contains(const Generator& g) const { return exponent_of(g) > 0; }

  // Multiply two monomials.  Returns the Koszul sign (+1/-1) and the product,
  // or nullopt when an odd generator appears in both (the product is zero).
  static std::optional<std::pair<int, Monomial>> multiply(const Monomial& a, const Monomial& b);

  // Divide: returns q with q * d == *this (up to sign handled by caller via
  // multiply), or nullopt when d does not divide this monomial.
  std::optional<Monomial> divide_by(const Monomial& d) const;

  // Total order: by degree, then lexicographically on the factor list.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.factors_ < b.factors_;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors_ == b.factors_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  std::string str() const;

 private:
  std::vector<Factor> factors_;
};

// A polynomial with rational coefficients in a free graded-commutative
// algebra.  Zero coefficients are never stored.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(Rational c) {
    if (c != 0) terms_[Monomial::unit()] = std::move(c);
  }
  static Polynomial zero() { return Polynomial(); }
  static Polynomial one() { return Polynomial(Rational(1)); }
  static Polynomial term(Monomial m, Rational c) {
    Polynomial p;
    if (c != 0) p.terms_[std::move(m)] = std::move(c);
    return p;
  }
  static Polynomial generator(const Generator& g) {
    return term(Monomial::of(g), Rational(1));
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Degree if homogeneous; nullopt for 0 or mixed-degree polynomials.
  std::optional<int> homogeneous_degree() const;

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(int e) const;

  std::string str() const;

 private:
  Terms terms_;
};

}  // namespace rht
