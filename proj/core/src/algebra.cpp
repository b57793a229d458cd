#include "rht/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace rht {

std::optional<Monomial> Monomial::from_factors(std::vector<Factor> fs) {
  std::sort(fs.begin(), fs.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  Monomial m;
  for (auto& [g, e] : fs) {
    if (e == 0) continue;
    if (e < 0) return std::nullopt;
    if (!m.factors_.empty() && m.factors_.back().first == g) {
      m.factors_.back().second += e;
    } else {
      m.factors_.push_back({g, e});
    }
  }
  for (const auto& [g, e] : m.factors_)
    if (g.is_odd() && e > 1) return std::nullopt;
  return m;
}

std::optional<std::pair<int, Monomial>> Monomial::multiply(const Monomial& a, const Monomial& b) {
  // Koszul sign: moving each odd factor of b left past the odd factors of a
  // that are strictly greater in the canonical order contributes one sign
  // flip per transposition of odd generators.
  int sign = 1;
  // Count odd generators of a that are > each odd generator of b.
  // Both factor lists are sorted, so walk them once.
  std::size_t ia = 0;
  // Odd exponents are always 1, so "number of odd factors of a greater than
  // g" is the count of odd generators after the merge position.
  // Precompute suffix counts of odd factors in a.
  const auto& fa = a.factors_;
  const auto& fb = b.factors_;
  std::vector<int> odd_suffix(fa.size() + 1, 0);
  for (std::size_t i = fa.size(); i-- > 0;)
    odd_suffix[i] = odd_suffix[i + 1] + (fa[i].first.is_odd() ? 1 : 0);

  Monomial out;
  std::size_t ib = 0;
  ia = 0;
  while (ia < fa.size() || ib < fb.size()) {
    if (ib == fb.size() || (ia < fa.size() && fa[ia].first < fb[ib].first)) {
      out.factors_.push_back(fa[ia]);
      ++ia;
    } else if (ia == fa.size() || fb[ib].first < fa[ia].first) {
      // fb[ib] jumps over the remaining odd factors of a.
      if (fb[ib].first.is_odd() && (odd_suffix[ia] % 2 != 0)) sign = -sign;
      out.factors_.push_back(fb[ib]);
      ++ib;
    } else {
      // Same generator in both: zero if odd, else merge exponents.
      if (fa[ia].first.is_odd()) return std::nullopt;
      out.factors_.push_back({fa[ia].first, fa[ia].second + fb[ib].second});
      ++ia;
      ++ib;
    }
  }
  return std::make_pair(sign, std::move(out));
}

std::optional<Monomial> Monomial::divide_by(const Monomial& d) const {
  Monomial q;
  std::size_t i = 0;
  for (const auto& [g, e] : factors_) {
    int sub = 0;
    if (i < d.factors_.size() && d.factors_[i].first == g) {
      sub = d.factors_[i].second;
      ++i;
    }
    if (sub > e) return std::nullopt;
    if (e - sub > 0) q.factors_.push_back({g, e - sub});
  }
  if (i != d.factors_.size()) return std::nullopt;  // d has a generator we lack
  return q;
}

std::string Monomial::str() const {
  if (factors_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, e] : factors_) {
    if (!first) os << "*";
    first = false;
    os << g.name;
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

std::optional<int> Polynomial::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_)
    if (m.degree() != d) return std::nullopt;
  return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto prod = Monomial::multiply(ma, mb);
      if (!prod) continue;
      out.add_term(prod->second, ca * cb * prod->first);
    }
  }
  return out;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw std::domain_error("Polynomial::pow: negative exponent");
  Polynomial r = Polynomial::one();
  Polynomial b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    if (m.is_unit()) {
      os << a.str();
    } else if (a == 1) {
      os << m.str();
    } else {
      os << a.str() << "*" << m.str();
    }
  }
  return os.str();
}

}  // namespace rht
