#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "rht/cdga.hpp"
#include "rht/dual.hpp"
#include "rht/morphism.hpp"

namespace rht {

// A relative Sullivan model B -> B otimes Lambda V with an optional
// polynomial "group" part Lambda W sitting inside the base (used for Borel
// constructions of conjugation actions).  `base` must be a sub-CDGA of
// `total`, `fiber` lists the generators of V, and `group` lists the
// generators of W (a subset of the base generators; empty for plain
// fibrations).
struct RelativeModel {
  CDGA base;
  std::vector<Generator> fiber;
  CDGA total;
  std::vector<Generator> group;

  // Throws std::invalid_argument when the data is not a relative model:
  // overlapping generator sets, differentials that do not restrict, a fiber
  // quotient with d^2 != 0, or group generators that are odd / not closed
  // inside Lambda W.
  void validate() const;
};

// One relation of the section model: the differential of a generator
// v (x) beta of word degree -1.  In the quotient model the relation is set
// to zero; it always lives in degree 0.
struct Constraint {
  std::string from_generator;
  Polynomial relation;
};

// Brown-Szczarba style model of a section space (or of the Borel
// construction of the conjugation action on it).  `algebra` is free on the
// kept generators v (x) beta of degree >= 0 together with the group
// generators; `constraints` records the degree-0 relations coming from
// generators of degree -1.
struct SectionModel {
  CDGA algebra;
  std::vector<Constraint> constraints;
  DegreeWindow window{0, 0};
  SignConvention convention = SignConvention::kSection4;
  CDGA base;
  std::vector<Generator> fiber;
};

// An augmentation: values on degree-0 generators, keyed by generator name.
struct Augmentation {
  std::map<std::string, Rational> values;
};

// Result of solving the degree-0 constraints of a SectionModel:
// `substitutions` expresses some degree-0 generators as polynomials in the
// remaining (free) degree-0 generators, fully back-substituted; `residual`
// lists constraints that could not be solved for any generator (empty on all
// the models produced here).
struct ConstraintSolution {
  std::map<Generator, Polynomial> substitutions;
  std::vector<Constraint> residual;
};

// Rewrites the element a (x) dual(beta) of (Lambda(V) (x) B (x) LambdaW) (x)
// B^vee into the section algebra Lambda(V (x) B^vee) (x) LambdaW:
//  * base factors are absorbed into beta by the cap pairing, with the
//    absorption sign of `conv` (one absorption per term, covering the whole
//    base block at once);
//  * V-words are split along the comultiplication of beta with the Koszul
//    sign (-1)^{|rest| |beta'|};
//  * group factors ride along as coefficients;
//  * tensor generators of negative degree are set to zero.
// `a` must be an element of R.total (extended by W); beta indexes a basis
// monomial of C.  Throws std::runtime_error if a cap pairing is truncated by
// the coalgebra window.
Polynomial normal_form_IJ(const RelativeModel& R, const Coalgebra& C,
                          SignConvention conv, const Polynomial& a,
                          const Monomial& beta);

// The name given to the tensor generator v (x) dual(m): "<v>(x)<dual name>".
std::string tensor_generator_name(const Generator& v, const std::string& dual_name);

// Brown-Szczarba model of the space of sections of the fibration modelled by
// R (which must have an empty group part).  C must be the coalgebra dual of
// R.base on a window whose top is at least max |v| + 1.  The result's
// algebra carries the differential
//   d(v (x) beta) = NF(d_total(v) (x) beta) + (-1)^{|v|} v (x) d^vee(beta),
// with the D2 term signed by `conv`; generators of degree -1 contribute
// constraints instead.
SectionModel brown_szczarba(const RelativeModel& R, const Coalgebra& C,
                            const DegreeWindow& window, SignConvention conv);

// Model of the Borel construction of the conjugation action of the group
// modelled by Lambda W on the space of sections.  R must contain the group
// generators in its base; C must be the coalgebra dual of the base WITHOUT
// the group part (pure B), with a window as for brown_szczarba.  The D2 term
// generalises to a sum over the Lambda W monomial basis:
//   d(v (x) beta) += (-1)^{|v|} sum_{a, m'} sign(conv, |a|)
//                      coeff(beta * a, d_base(m')) (v (x) dual(m')) a.
SectionModel conjugation_borel(const RelativeModel& R, const Coalgebra& C,
                               const DegreeWindow& window, SignConvention conv);

// Solves the degree-0 constraints of S by repeatedly picking, in each
// relation, the greatest generator that occurs linearly (exactly once, alone
// in its monomial, in no other monomial of the relation) and solving for it;
// substitutions are back-substituted until none of them mentions a solved
// generator.
ConstraintSolution solve_constraints(const SectionModel& S);

// Substitutes the solved generators of `sol` into p.
Polynomial reduce_mod_constraints(const ConstraintSolution& sol, const Polynomial& p);

// Extends a partial augmentation (defined on the free degree-0 generators)
// to all degree-0 generators of S by evaluating the constraint
// substitutions.  Throws std::invalid_argument if a free generator has no
// value or if a supplied value contradicts a constraint (the error names the
// generator whose relation fails).
Augmentation complete_augmentation(const SectionModel& S, const Augmentation& partial);

// The model of the path component of S selected by the augmentation: every
// degree-0 generator is replaced by its value (constraints must evaluate to
// zero) and dropped.  `eps` may be partial in the sense of
// complete_augmentation.
CDGA component_model(const SectionModel& S, const Augmentation& eps);

// The algebra of S with its degree-0 constraints eliminated: each solved
// generator is dropped and substituted into the remaining differentials,
// presenting the quotient by the constraint ideal as a free CDGA (d^2 = 0
// holds exactly there).  Throws std::runtime_error if any constraint cannot
// be solved linearly.
CDGA solved_presentation(const SectionModel& S);

// Model of the evaluation map  Sect x X -> Y  as a morphism from R.total to
// S.algebra (x) R.base:
//   v |-> sum_m sign(conv, |m|) (v (x) dual(m)) m.
// R must have an empty group part and S must have been built from (R, C).
Morphism evaluation_map_model(const SectionModel& S, const RelativeModel& R,
                              const Coalgebra& C);

// Extracts the coefficient of b^i (the degree-2 base generator "b" of C) in
// p, viewed in (section algebra) (x) B: keeps exactly the terms whose base
// block equals b^i and strips it.  No sign is introduced (the base block is
// even).
Polynomial pushforward_p_beta(const Polynomial& p, int i, const Coalgebra& C);

}  // namespace rht
