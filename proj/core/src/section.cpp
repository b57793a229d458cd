#include "rht/section.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rht {

namespace {

Polynomial keep_monomials_without(const Polynomial& p, const std::set<std::string>& names) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    bool drop = false;
    for (const auto& [g, e] : m.factors()) {
      (void)e;
      if (names.count(g.name)) {
        drop = true;
        break;
      }
    }
    if (!drop) out.add_term(m, c);
  }
  return out;
}

bool poly_equal(const Polynomial& a, const Polynomial& b) { return (a - b).is_zero(); }

// Substitute even-degree generators by polynomials (no Koszul signs arise).
Polynomial substitute_even(const Polynomial& p, const std::map<Generator, Polynomial>& subs) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    Polynomial term = Polynomial(c);
    for (const auto& [g, e] : m.factors()) {
      auto it = subs.find(g);
      if (it != subs.end()) {
        if (g.is_odd()) throw std::logic_error("substitute_even: odd generator " + g.name);
        term = term * it->second.pow(e);
      } else {
        term = term * Polynomial::term(Monomial::of(g, e), Rational(1));
      }
    }
    out += term;
  }
  return out;
}

// Evaluate a polynomial in degree-0 generators to a number.
Rational evaluate_scalar(const Polynomial& p, const std::map<std::string, Rational>& vals,
                         const std::string& context) {
  Rational out(0);
  for (const auto& [m, c] : p.terms()) {
    Rational prod = c;
    for (const auto& [g, e] : m.factors()) {
      auto it = vals.find(g.name);
      if (it == vals.end())
        throw std::invalid_argument("augmentation: missing value for generator " + g.name +
                                    " needed by " + context);
      prod *= rational_pow(it->second, e);
    }
    out += prod;
  }
  return out;
}

// Evaluate the degree-0 factors of every monomial, keeping the rest.
Polynomial evaluate_degree0(const Polynomial& p, const std::map<std::string, Rational>& vals,
                            const std::string& context) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    Rational k = c;
    std::vector<Monomial::Factor> keep;
    for (const auto& [g, e] : m.factors()) {
      if (g.degree == 0) {
        auto it = vals.find(g.name);
        if (it == vals.end())
          throw std::invalid_argument("augmentation: missing value for generator " + g.name +
                                      " needed by " + context);
        k *= rational_pow(it->second, e);
      } else {
        keep.push_back({g, e});
      }
    }
    auto rest = Monomial::from_factors(keep);
    if (!rest) throw std::logic_error("evaluate_degree0: invalid residual monomial");
    if (k != 0) out += Polynomial::term(*rest, k);
  }
  return out;
}

// Rewriting engine shared by brown_szczarba and conjugation_borel.
class Rewriter {
 public:
  Rewriter(const RelativeModel& R, const Coalgebra& C, SignConvention conv)
      : R_(&R), C_(&C), conv_(conv) {
    for (const auto& g : R.fiber) fiber_.insert(g.name);
    for (const auto& g : R.base.generators()) base_.insert(g.name);
    for (const auto& g : R.group) group_.insert(g.name);
  }

  Generator tensor_generator(const Generator& v, const Monomial& beta) const {
    return Generator{tensor_generator_name(v, C_->dual_name(beta)),
                     v.degree - beta.degree()};
  }

  // v (x) dual(beta) as a polynomial; zero when the degree is negative
  // (K-quotient).
  Polynomial generator_or_zero(const Generator& v, const Monomial& beta) const {
    if (v.degree - beta.degree() < 0) return Polynomial::zero();
    return Polynomial::generator(tensor_generator(v, beta));
  }

  Polynomial normal_form(const Polynomial& a, const Monomial& beta) const {
    Polynomial out;
    for (const auto& [m, coef] : a.terms()) {
      Split sp = split(m);
      auto cap = C_->cap(beta, Polynomial::term(sp.base, Rational(1)));
      if (cap.truncated)
        throw std::runtime_error("normal_form_IJ: coalgebra window too small for cap against " +
                                 sp.base.str());
      int jsign = absorption_sign(conv_, sp.base.degree());
      for (const auto& [b2, c2] : cap.value) {
        Polynomial w = rewrite_word(sp.word, 0, b2);
        if (w.is_zero()) continue;
        out += w * Polynomial::term(sp.group, coef * c2 * sp.sign * jsign);
      }
    }
    return out;
  }

  // Full differential of the tensor generator v (x) dual(beta).  The
  // Brown-Szczarba path adds the transpose-differential term through the
  // coalgebra; the conjugation path adds the correction sum over the Lambda W
  // basis read off from the base differential (which subsumes the transpose
  // term as the W = 1 column).
  Polynomial differential(const Generator& v, const Monomial& beta, bool conjugation) {
    Polynomial out = normal_form(R_->total.differential_of(v), beta);
    int vsign = parity_sign(v.degree);
    if (!conjugation) {
      for (const auto& [mp, c] : C_->dual_differential(beta)) {
        Polynomial g = generator_or_zero(v, mp);
        if (g.is_zero()) continue;
        out += g * (c * vsign * absorption_sign(conv_, 0));
      }
    } else {
      ensure_corrections();
      auto it = corrections_.find(beta);
      if (it != corrections_.end()) {
        for (const auto& e : it->second) {
          Polynomial g = generator_or_zero(v, e.mprime);
          if (g.is_zero()) continue;
          out += g * Polynomial::term(e.group,
                                      e.coef * vsign * absorption_sign(conv_, e.group.degree()));
        }
      }
    }
    return out;
  }

 private:
  struct Split {
    std::vector<Generator> word;  // fiber generators with multiplicity
    Monomial base = Monomial::unit();
    Monomial group = Monomial::unit();
    int sign = 1;  // m = sign * word-product * base * group
  };

  Split split(const Monomial& m) const {
    Split sp;
    std::vector<Monomial::Factor> vf, bf, wf;
    for (const auto& [g, e] : m.factors()) {
      if (fiber_.count(g.name)) {
        vf.push_back({g, e});
        for (int i = 0; i < e; ++i) sp.word.push_back(g);
      } else if (group_.count(g.name)) {
        wf.push_back({g, e});
      } else if (base_.count(g.name)) {
        bf.push_back({g, e});
      } else {
        throw std::invalid_argument("normal_form_IJ: generator " + g.name +
                                    " is neither fiber, base nor group");
      }
    }
    auto mv = Monomial::from_factors(vf);
    auto mb = Monomial::from_factors(bf);
    auto mw = Monomial::from_factors(wf);
    if (!mv || !mb || !mw) throw std::logic_error("normal_form_IJ: invalid block split");
    auto s1 = Monomial::multiply(*mv, *mb);
    if (!s1) throw std::logic_error("normal_form_IJ: block multiply failed");
    auto s2 = Monomial::multiply(s1->second, *mw);
    if (!s2) throw std::logic_error("normal_form_IJ: block multiply failed");
    sp.base = *mb;
    sp.group = *mw;
    sp.sign = s1->first * s2->first;
    return sp;
  }

  // Rewrite the fiber word word[pos..] against dual(beta): split Delta(beta)
  // between the head generator and the rest with the sign
  // (-1)^{|rest| * |beta'|}.
  Polynomial rewrite_word(const std::vector<Generator>& word, std::size_t pos,
                          const Monomial& beta) const {
    if (pos == word.size())
      return beta.is_unit() ? Polynomial::one() : Polynomial::zero();
    if (pos + 1 == word.size()) return generator_or_zero(word[pos], beta);
    long rest = 0;
    for (std::size_t i = pos + 1; i < word.size(); ++i) rest += word[i].degree;
    Polynomial out;
    for (const auto& t : C_->comultiplication(beta)) {
      Polynomial left = generator_or_zero(word[pos], t.left);
      if (left.is_zero()) continue;
      Polynomial right = rewrite_word(word, pos + 1, t.right);
      if (right.is_zero()) continue;
      out += left * right * (t.coef * parity_sign(rest * t.left.degree()));
    }
    return out;
  }

  struct Correction {
    Monomial mprime;  // basis monomial of B whose differential contributes
    Monomial group;   // Lambda W block of that contribution
    Rational coef;
  };

  void ensure_corrections() {
    if (corrections_built_) return;
    corrections_built_ = true;
    for (const auto& mp : C_->all_basis()) {
      Polynomial d = R_->base.apply_differential(Polynomial::term(mp, Rational(1)));
      for (const auto& [mm, c] : d.terms()) {
        std::vector<Monomial::Factor> bf, wf;
        for (const auto& [g, e] : mm.factors())
          (group_.count(g.name) ? wf : bf).push_back({g, e});
        auto bm = Monomial::from_factors(bf);
        auto wm = Monomial::from_factors(wf);
        if (!bm || !wm) throw std::logic_error("conjugation_borel: invalid base/group split");
        // group generators are even, so the split carries no sign
        corrections_[*bm].push_back({mp, *wm, c});
      }
    }
  }

  const RelativeModel* R_;
  const Coalgebra* C_;
  SignConvention conv_;
  std::set<std::string> fiber_, base_, group_;
  bool corrections_built_ = false;
  std::map<Monomial, std::vector<Correction>> corrections_;
};

void check_compatible(const RelativeModel& R, const Coalgebra& C, const DegreeWindow& window) {
  R.validate();
  window.validate();
  if (window.lo != 0)
    throw std::invalid_argument("section model: window must start at degree 0");
  int max_fiber = 0;
  for (const auto& v : R.fiber) max_fiber = std::max(max_fiber, v.degree);
  if (window.hi < max_fiber)
    throw std::invalid_argument(
        "section model: window top is below the top fiber generator degree");
  if (C.window().lo != 0 || C.window().hi < max_fiber + 1)
    throw std::invalid_argument(
        "section model: coalgebra window must cover [0, max fiber degree + 1]");
  // C must be the dual of the base without the group part.
  std::set<std::string> group_names;
  for (const auto& g : R.group) group_names.insert(g.name);
  std::set<std::string> expected, actual;
  for (const auto& g : R.base.generators())
    if (!group_names.count(g.name)) expected.insert(g.name);
  for (const auto& g : C.base_algebra().generators()) actual.insert(g.name);
  if (expected != actual)
    throw std::invalid_argument(
        "section model: coalgebra generators do not match the base (minus group)");
  for (const auto& [g, k] : C.base_algebra().truncations()) {
    auto t = R.base.truncation_of(g);
    if (!t || *t != k)
      throw std::invalid_argument("section model: coalgebra truncations do not match the base");
  }
}

SectionModel build_model(const RelativeModel& R, const Coalgebra& C, const DegreeWindow& window,
                         SignConvention conv, bool conjugation) {
  check_compatible(R, C, window);
  Rewriter rw(R, C, conv);

  SectionModel S;
  S.window = window;
  S.convention = conv;
  S.base = R.base;
  S.fiber = R.fiber;

  for (const auto& w : R.group) S.algebra.add_generator(w);

  struct Pending {
    Generator v;
    Monomial beta;
  };
  std::vector<Pending> kept, relations;
  for (const auto& v : R.fiber) {
    for (const auto& beta : C.all_basis()) {
      int deg = v.degree - beta.degree();
      if (deg >= 0 && deg <= window.hi)
        kept.push_back({v, beta});
      else if (deg == -1)
        relations.push_back({v, beta});
    }
  }
  for (const auto& p : kept) S.algebra.add_generator(rw.tensor_generator(p.v, p.beta));
  for (const auto& w : R.group) S.algebra.set_differential(w, R.base.differential_of(w));
  for (const auto& p : kept)
    S.algebra.set_differential(rw.tensor_generator(p.v, p.beta),
                               rw.differential(p.v, p.beta, conjugation));
  for (const auto& p : relations)
    S.constraints.push_back(
        {rw.tensor_generator(p.v, p.beta).name, rw.differential(p.v, p.beta, conjugation)});

  // d^2 must vanish modulo the degree-0 constraint relations (exactly, when
  // there are none).
  auto sol = solve_constraints(S);
  auto rep = S.algebra.check_d_squared();
  for (const auto& [g, residue] : rep.failures) {
    Polynomial r = reduce_mod_constraints(sol, residue);
    if (!r.is_zero()) {
      std::ostringstream msg;
      msg << "section model: d^2 != 0 (mod constraints) at generator " << g.name
          << ": residue " << r.str();
      if (!sol.residual.empty())
        msg << " (" << sol.residual.size() << " unsolved constraints)";
      throw std::runtime_error(msg.str());
    }
  }
  return S;
}

}  // namespace

void RelativeModel::validate() const {
  std::set<std::string> base_names, fiber_names, group_names;
  for (const auto& g : base.generators()) base_names.insert(g.name);
  for (const auto& g : fiber) fiber_names.insert(g.name);
  for (const auto& g : group) group_names.insert(g.name);

  for (const auto& g : fiber) {
    if (base_names.count(g.name))
      throw std::invalid_argument("relative model: generator " + g.name +
                                  " is both base and fiber");
    if (!total.has_generator(g))
      throw std::invalid_argument("relative model: fiber generator " + g.name +
                                  " is missing from the total algebra");
  }
  for (const auto& g : base.generators())
    if (!total.has_generator(g))
      throw std::invalid_argument("relative model: base generator " + g.name +
                                  " is missing from the total algebra");
  if (total.generators().size() != base.generators().size() + fiber.size())
    throw std::invalid_argument(
        "relative model: total generators are not exactly base + fiber");

  for (const auto& g : group) {
    if (!base_names.count(g.name))
      throw std::invalid_argument("relative model: group generator " + g.name +
                                  " is not a base generator");
    if (g.is_odd())
      throw std::invalid_argument("relative model: group generator " + g.name + " is odd");
  }
  // Group differentials must stay inside Lambda W.
  {
    std::set<std::string> non_group;
    for (const auto& h : base.generators())
      if (!group_names.count(h.name)) non_group.insert(h.name);
    for (const auto& g : group) {
      Polynomial dg = base.differential_of(g);
      if (!poly_equal(dg, keep_monomials_without(dg, non_group)))
        throw std::invalid_argument("relative model: d(" + g.name +
                                    ") leaves the group subalgebra");
    }
  }

  // The base must be a sub-CDGA of the total algebra.
  for (const auto& g : base.generators()) {
    const Polynomial& db = base.differential_of(g);
    const Polynomial& dt = total.differential_of(g);
    if (!poly_equal(db, dt))
      throw std::invalid_argument("relative model: differential of base generator " + g.name +
                                  " differs between base and total");
    if (!base.contains_polynomial(db))
      throw std::invalid_argument("relative model: d(" + g.name +
                                  ") leaves the base subalgebra");
  }

  // Truncations must agree and live on base generators only.
  for (const auto& [g, k] : base.truncations()) {
    auto t = total.truncation_of(g);
    if (!t || *t != k)
      throw std::invalid_argument("relative model: truncation of " + g.name +
                                  " differs between base and total");
  }
  for (const auto& [g, k] : total.truncations()) {
    (void)k;
    if (!base_names.count(g.name))
      throw std::invalid_argument("relative model: truncation on non-base generator " + g.name);
    if (!base.truncation_of(g))
      throw std::invalid_argument("relative model: truncation of " + g.name +
                                  " is missing from the base");
  }

  // The fiber quotient (base generators sent to zero) must be a CDGA.
  CDGA quotient;
  for (const auto& g : fiber) quotient.add_generator(g);
  for (const auto& g : fiber)
    quotient.set_differential(g, keep_monomials_without(total.differential_of(g), base_names));
  auto rep = quotient.check_d_squared();
  if (!rep.ok)
    throw std::invalid_argument("relative model: fiber quotient has d^2 != 0 at generator " +
                                rep.failures.front().first.name);
}

std::string tensor_generator_name(const Generator& v, const std::string& dual_name) {
  return v.name + "(x)" + dual_name;
}

Polynomial normal_form_IJ(const RelativeModel& R, const Coalgebra& C, SignConvention conv,
                          const Polynomial& a, const Monomial& beta) {
  Rewriter rw(R, C, conv);
  return rw.normal_form(a, beta);
}

SectionModel brown_szczarba(const RelativeModel& R, const Coalgebra& C,
                            const DegreeWindow& window, SignConvention conv) {
  if (!R.group.empty())
    throw std::invalid_argument(
        "brown_szczarba: relative model has a group part (use conjugation_borel)");
  return build_model(R, C, window, conv, /*conjugation=*/false);
}

SectionModel conjugation_borel(const RelativeModel& R, const Coalgebra& C,
                               const DegreeWindow& window, SignConvention conv) {
  return build_model(R, C, window, conv, /*conjugation=*/true);
}

ConstraintSolution solve_constraints(const SectionModel& S) {
  ConstraintSolution sol;
  std::vector<Constraint> pending = S.constraints;
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<Constraint> next;
    for (const auto& c : pending) {
      Polynomial r = substitute_even(c.relation, sol.substitutions);
      if (r.is_zero()) continue;  // satisfied identically
      // Generators that occur linearly: alone in a degree-0 monomial with
      // exponent one, and nowhere else in the relation.
      std::optional<Generator> pick;
      for (const auto& [m, coef] : r.terms()) {
        (void)coef;
        auto fs = m.factors();
        if (fs.size() != 1 || fs[0].second != 1) continue;
        const Generator& g = fs[0].first;
        if (g.degree != 0) continue;
        bool elsewhere = false;
        for (const auto& [m2, c2] : r.terms()) {
          (void)c2;
          if (!(m2 == m) && m2.contains(g)) {
            elsewhere = true;
            break;
          }
        }
        if (elsewhere) continue;
        if (!pick || *pick < g) pick = g;
      }
      if (!pick) {
        next.push_back({c.from_generator, r});
        continue;
      }
      Monomial mg = Monomial::of(*pick);
      Rational coeff = r.coefficient(mg);
      Polynomial rest = r - Polynomial::term(mg, coeff);
      Polynomial value = rest * (Rational(-1) / coeff);
      for (auto& [g, q] : sol.substitutions) {
        (void)g;
        q = substitute_even(q, {{*pick, value}});
      }
      sol.substitutions[*pick] = value;
      progress = true;
    }
    pending = std::move(next);
  }
  for (const auto& c : pending) {
    Polynomial r = substitute_even(c.relation, sol.substitutions);
    if (!r.is_zero()) sol.residual.push_back({c.from_generator, r});
  }
  return sol;
}

Polynomial reduce_mod_constraints(const ConstraintSolution& sol, const Polynomial& p) {
  return substitute_even(p, sol.substitutions);
}

Augmentation complete_augmentation(const SectionModel& S, const Augmentation& partial) {
  for (const auto& [name, v] : partial.values) {
    (void)v;
    auto g = S.algebra.generator_by_name(name);
    if (!g || g->degree != 0)
      throw std::invalid_argument("augmentation: " + name + " is not a degree-0 generator");
  }
  ConstraintSolution sol = solve_constraints(S);
  std::map<std::string, Rational> vals = partial.values;
  // Values of solved generators follow from the free ones; user-supplied
  // values win and are cross-checked by the constraint validation below.
  for (const auto& [g, q] : sol.substitutions) {
    if (vals.count(g.name)) continue;
    vals[g.name] = evaluate_scalar(q, vals, "the constraint substitution for " + g.name);
  }
  for (const auto& g : S.algebra.generators()) {
    if (g.degree != 0) continue;
    if (!vals.count(g.name))
      throw std::invalid_argument("augmentation: missing value for free degree-0 generator " +
                                  g.name);
  }
  for (const auto& c : S.constraints) {
    Rational v = evaluate_scalar(c.relation, vals, "the relation of " + c.from_generator);
    if (v != 0)
      throw std::invalid_argument("augmentation: inconsistent with the relation of " +
                                  c.from_generator + " (value " + to_string(v) + ")");
  }
  Augmentation full;
  full.values = std::move(vals);
  return full;
}

CDGA component_model(const SectionModel& S, const Augmentation& eps) {
  Augmentation full = complete_augmentation(S, eps);
  // The quotient by (g - eps(g)) is a CDGA only when the ideal is closed
  // under d: every degree-0 generator's differential must evaluate to zero.
  for (const auto& g : S.algebra.generators()) {
    if (g.degree != 0) continue;
    Polynomial dg = evaluate_degree0(S.algebra.differential_of(g), full.values,
                                     "d(" + g.name + ")");
    if (!dg.is_zero())
      throw std::invalid_argument(
          "component model: degree-0 generator " + g.name +
          " has a differential that does not vanish at the augmentation");
  }
  CDGA out;
  for (const auto& g : S.algebra.generators())
    if (g.degree >= 1) out.add_generator(g);
  for (const auto& [g, k] : S.algebra.truncations())
    if (g.degree >= 1) out.set_truncation(g, k);
  for (const auto& g : S.algebra.generators())
    if (g.degree >= 1)
      out.set_differential(
          g, evaluate_degree0(S.algebra.differential_of(g), full.values, "d(" + g.name + ")"));
  auto rep = out.check_d_squared();
  if (!rep.ok)
    throw std::runtime_error("component model: d^2 != 0 at generator " +
                             rep.failures.front().first.name);
  return out;
}

Morphism evaluation_map_model(const SectionModel& S, const RelativeModel& R,
                              const Coalgebra& C) {
  if (!R.group.empty())
    throw std::invalid_argument("evaluation_map_model: group part not supported");
  // Target: section algebra tensor base.
  CDGA target;
  for (const auto& g : R.base.generators()) target.add_generator(g);
  for (const auto& g : S.algebra.generators()) target.add_generator(g);
  for (const auto& [g, k] : R.base.truncations()) target.set_truncation(g, k);
  for (const auto& g : R.base.generators()) target.set_differential(g, R.base.differential_of(g));
  for (const auto& g : S.algebra.generators())
    target.set_differential(g, S.algebra.differential_of(g));

  Morphism phi(R.total, target);
  for (const auto& g : R.base.generators()) phi.set_image(g, Polynomial::generator(g));
  Rewriter rw(R, C, S.convention);
  for (const auto& v : R.fiber) {
    Polynomial image;
    for (int k = 0; k <= v.degree; ++k) {
      for (const auto& m : C.basis(k)) {
        Polynomial g = rw.generator_or_zero(v, m);
        if (g.is_zero()) continue;
        auto prod = g * Polynomial::term(m, Rational(absorption_sign(S.convention, k)));
        image += prod;
      }
    }
    phi.set_image(v, target.reduce(image));
  }
  return phi;
}

Polynomial pushforward_p_beta(const Polynomial& p, int i, const Coalgebra& C) {
  if (i < 0) throw std::invalid_argument("pushforward_p_beta: negative index");
  Monomial target = Monomial::unit();
  if (i > 0) {
    auto b = C.base_algebra().generator_by_name("b");
    if (!b)
      throw std::invalid_argument("pushforward_p_beta: base algebra has no generator 'b'");
    target = Monomial::of(*b, i);
  }
  std::set<std::string> base_names;
  for (const auto& g : C.base_algebra().generators()) base_names.insert(g.name);
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Factor> base_part, rest;
    for (const auto& [g, e] : m.factors())
      (base_names.count(g.name) ? base_part : rest).push_back({g, e});
    auto bm = Monomial::from_factors(base_part);
    auto rm = Monomial::from_factors(rest);
    if (!bm || !rm) throw std::logic_error("pushforward_p_beta: invalid split");
    if (*bm == target) out.add_term(*rm, c);  // b^i is even: no sign
  }
  return out;
}

CDGA solved_presentation(const SectionModel& S) {
  ConstraintSolution sol = solve_constraints(S);
  if (!sol.residual.empty())
    throw std::runtime_error("solved_presentation: " + std::to_string(sol.residual.size()) +
                             " constraints have no linear solving generator");
  CDGA out;
  for (const auto& g : S.algebra.generators())
    if (!sol.substitutions.count(g)) out.add_generator(g);
  for (const auto& [g, k] : S.algebra.truncations())
    if (!sol.substitutions.count(g)) out.set_truncation(g, k);
  for (const auto& g : S.algebra.generators())
    if (!sol.substitutions.count(g))
      out.set_differential(g, reduce_mod_constraints(sol, S.algebra.differential_of(g)));
  return out;
}

}  // namespace rht
