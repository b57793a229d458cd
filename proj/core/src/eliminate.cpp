#include "rht/eliminate.hpp"

#include <stdexcept>

namespace rht {

namespace {

Polynomial drop_monomials_containing(const Polynomial& p, const Generator& g) {
  Polynomial out;
  for (const auto& [m, c] : p.terms())
    if (!m.contains(g)) out.add_term(m, c);
  return out;
}

bool polynomial_mentions(const Polynomial& p, const Generator& g) {
  for (const auto& [m, c] : p.terms())
    if (m.contains(g)) return true;
  return false;
}

}  // namespace

Elimination eliminate_pair(const CDGA& algebra, const Generator& x, const Generator& y) {
  if (!algebra.has_generator(x) || !algebra.has_generator(y))
    throw std::invalid_argument("eliminate_pair: generators not in the algebra");
  if (x == y) throw std::invalid_argument("eliminate_pair: x and y must differ");

  const Polynomial& dx = algebra.differential_of(x);
  Rational c = dx.coefficient(Monomial::of(y));
  if (c == 0)
    throw std::invalid_argument("eliminate_pair: d(" + x.name + ") has no linear " + y.name +
                                " term");
  if (c != 1 && c != -1)
    throw std::invalid_argument("eliminate_pair: coefficient of " + y.name + " in d(" + x.name +
                                ") must be a unit (rescale the generator first)");
  Polynomial r = dx - Polynomial::term(Monomial::of(y), c);
  if (polynomial_mentions(r, y))
    throw std::invalid_argument("eliminate_pair: " + y.name +
                                " appears nonlinearly in d(" + x.name + ")");

  // In the quotient x = 0, so y = -(r with x set to 0) / c.
  Polynomial y_image = drop_monomials_containing(r, x) * (Rational(-1) / c);

  CDGA reduced;
  for (const auto& g : algebra.generators())
    if (g != x && g != y) reduced.add_generator(g);
  for (const auto& [g, k] : algebra.truncations())
    if (g != x && g != y) reduced.set_truncation(g, k);

  // Substitution map used to transport differentials; its target has no
  // differential yet, which apply() does not need.
  Morphism subst(algebra, reduced);
  for (const auto& g : algebra.generators()) {
    if (g == x)
      subst.set_image(g, Polynomial::zero());
    else if (g == y)
      subst.set_image(g, y_image);
    else
      subst.set_image(g, Polynomial::generator(g));
  }
  for (const auto& g : reduced.generators())
    reduced.set_differential(g, subst.apply(algebra.differential_of(g)));

  Morphism projection(algebra, reduced);
  for (const auto& g : algebra.generators()) {
    if (g == x)
      projection.set_image(g, Polynomial::zero());
    else if (g == y)
      projection.set_image(g, y_image);
    else
      projection.set_image(g, Polynomial::generator(g));
  }
  return Elimination{std::move(reduced), std::move(projection)};
}

Elimination eliminate_chain(const CDGA& algebra,
                            const std::vector<std::pair<std::string, std::string>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("eliminate_chain: no pairs given");
  CDGA current = algebra;
  Morphism projection(algebra, algebra);
  bool first = true;
  for (const auto& [xname, yname] : pairs) {
    auto x = current.generator_by_name(xname);
    auto y = current.generator_by_name(yname);
    if (!x || !y)
      throw std::invalid_argument("eliminate_chain: no generator named " +
                                  (x ? yname : xname));
    Elimination step = eliminate_pair(current, *x, *y);
    projection = first ? step.projection : step.projection.compose_after(projection);
    first = false;
    current = step.reduced;
  }
  return Elimination{std::move(current), std::move(projection)};
}

}  // namespace rht
