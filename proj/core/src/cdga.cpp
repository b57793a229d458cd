#include "rht/cdga.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rht {

void CDGA::add_generator(const Generator& g) {
  auto it = std::lower_bound(gens_.begin(), gens_.end(), g);
  if (it != gens_.end() && *it == g)
    throw std::invalid_argument("duplicate generator: " + g.name);
  if (std::any_of(gens_.begin(), gens_.end(),
                  [&](const Generator& h) { return h.name == g.name; }))
    throw std::invalid_argument("generator name reused in a different degree: " + g.name);
  gens_.insert(it, g);
}

void CDGA::set_differential(const Generator& g, Polynomial dg) {
  if (!has_generator(g))
    throw std::invalid_argument("set_differential: unknown generator " + g.name);
  diff_[g] = reduce(std::move(dg));
}

void CDGA::set_truncation(const Generator& g, int power) {
  if (!has_generator(g))
    throw std::invalid_argument("set_truncation: unknown generator " + g.name);
  if (power < 1) throw std::invalid_argument("set_truncation: power must be >= 1");
  trunc_[g] = power;
}

bool CDGA::has_generator(const Generator& g) const {
  return std::binary_search(gens_.begin(), gens_.end(), g);
}

std::optional<Generator> CDGA::generator_by_name(const std::string& name) const {
  for (const auto& g : gens_)
    if (g.name == name) return g;
  return std::nullopt;
}

const Polynomial& CDGA::differential_of(const Generator& g) const {
  static const Polynomial kZero;
  auto it = diff_.find(g);
  return it == diff_.end() ? kZero : it->second;
}

std::optional<int> CDGA::truncation_of(const Generator& g) const {
  auto it = trunc_.find(g);
  if (it == trunc_.end()) return std::nullopt;
  return it->second;
}

bool CDGA::monomial_vanishes(const Monomial& m) const {
  if (trunc_.empty()) return false;
  for (const auto& [g, e] : m.factors()) {
    auto it = trunc_.find(g);
    if (it != trunc_.end() && e >= it->second) return true;
  }
  return false;
}

Polynomial CDGA::reduce(Polynomial p) const {
  if (trunc_.empty()) return p;
  Polynomial out;
  for (const auto& [m, c] : p.terms())
    if (!monomial_vanishes(m)) out.add_term(m, c);
  return out;
}

Polynomial CDGA::power(const Polynomial& a, int e) const {
  if (e < 0) throw std::domain_error("CDGA::power: negative exponent");
  Polynomial r = Polynomial::one();
  Polynomial b = reduce(a);
  while (e) {
    if (e & 1) r = multiply(r, b);
    b = multiply(b, b);
    e >>= 1;
  }
  return r;
}

Polynomial CDGA::apply_differential(const Polynomial& p) const {
  // Graded Leibniz rule on each monomial g1^e1 ... gk^ek: differentiate one
  // factor at a time; the sign is the parity of the degree of everything to
  // the left of the differentiated factor.
  Polynomial out;
  for (const auto& [m, coef] : p.terms()) {
    int left_degree = 0;
    for (std::size_t i = 0; i < m.factors().size(); ++i) {
      const auto& [g, e] = m.factors()[i];
      const Polynomial& dg = differential_of(g);
      if (!dg.is_zero()) {
        // d(g^e) = e * g^{e-1} * dg, with g^{e-1} commuting to the left of dg.
        // Build the monomial with this factor's exponent reduced by one.
        std::vector<Monomial::Factor> rest;
        for (std::size_t j = 0; j < m.factors().size(); ++j) {
          if (j == i) {
            if (e > 1) rest.push_back({g, e - 1});
          } else {
            rest.push_back(m.factors()[j]);
          }
        }
        auto restm = Monomial::from_factors(rest);
        if (restm) {
          // Leibniz: d(A g^e B) contains (-1)^{|A|} A (e g^{e-1} dg) B.  We
          // accumulate it as (A g^{e-1} B) * dg, which moves dg (degree
          // |g|+1) past B from the middle to the right end, costing the
          // extra Koszul sign (-1)^{(|g|+1)|B|}.
          int right_degree = m.degree() - left_degree - g.degree * e;
          int sgn = parity_sign(left_degree) *
                    parity_sign(static_cast<long>(g.degree + 1) * right_degree);
          Polynomial piece = Polynomial::term(*restm, coef * e * sgn);
          out += piece * dg;
        }
      }
      left_degree += g.degree * e;
    }
  }
  return reduce(out);
}

CDGA::DSquaredReport CDGA::check_d_squared() const {
  DSquaredReport rep;
  for (const auto& g : gens_) {
    const Polynomial& dg = differential_of(g);
    if (dg.is_zero()) continue;
    if (!contains_polynomial(dg)) {
      rep.ok = false;
      rep.failures.push_back({g, dg});
      continue;
    }
    auto hd = dg.homogeneous_degree();
    if (!hd || *hd != g.degree + 1) {
      rep.ok = false;
      rep.failures.push_back({g, dg});
      continue;
    }
    Polynomial dd = apply_differential(dg);
    if (!dd.is_zero()) {
      rep.ok = false;
      rep.failures.push_back({g, dd});
    }
  }
  return rep;
}

bool CDGA::contains_polynomial(const Polynomial& p) const {
  for (const auto& [m, c] : p.terms())
    for (const auto& [g, e] : m.factors())
      if (!has_generator(g)) return false;
  return true;
}

std::string CDGA::str() const {
  std::ostringstream os;
  os << "Lambda(";
  bool first = true;
  for (const auto& g : gens_) {
    if (!first) os << ", ";
    first = false;
    os << g.name << "_" << g.degree;
    auto t = truncation_of(g);
    if (t) os << "[^" << *t << "=0]";
  }
  os << ")";
  for (const auto& g : gens_) {
    const Polynomial& dg = differential_of(g);
    if (!dg.is_zero()) os << "; d(" << g.name << ") = " << dg.str();
  }
  return os.str();
}

CDGA make_cdga(std::vector<Generator> gens,
               std::vector<std::pair<std::string, Polynomial>> diffs,
               std::vector<std::pair<std::string, int>> truncations) {
  CDGA a;
  for (const auto& g : gens) a.add_generator(g);
  for (auto& [name, p] : diffs) {
    auto g = a.generator_by_name(name);
    if (!g) throw std::invalid_argument("make_cdga: unknown generator " + name);
    a.set_differential(*g, std::move(p));
  }
  for (auto& [name, k] : truncations) {
    auto g = a.generator_by_name(name);
    if (!g) throw std::invalid_argument("make_cdga: unknown generator " + name);
    a.set_truncation(*g, k);
  }
  return a;
}

}  // namespace rht
