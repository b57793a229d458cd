#pragma once

#include "rht/homology.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rht {

// Two supported sign conventions for the ideal-absorption step of the
// section-space model (and everywhere the alpha sign enters: the base-dual
// correction terms and the evaluation map).  They differ by a global flip of
// the absorption sign.  Exactly one of the two reproduces the closed-form
// section models; the verification suite pins which one and the CLI default
// follows it.  Serialized as "section-3" / "section-4".
enum class SignConvention { kSection3, kSection4 };

std::string to_string(SignConvention c);
std::optional<SignConvention> sign_convention_from_string(const std::string& s);

// alpha_sign(r) = (-1)^{floor((r+1)/2)} for r >= 0.
int alpha_sign(long r);

// The sign attached to absorbing a degree-r base factor into a dual-basis
// argument: alpha_sign(r) under kSection3, its negative under kSection4.
int absorption_sign(SignConvention c, long r);

// The graded dual of a CDGA's monomial basis over a degree window.  A dual
// basis element is represented by the base monomial it is dual to; its degree
// is that monomial's degree.  The dual differential is the plain transpose of
// the base differential (no extra sign); comultiplication is dual to the
// product; cap is the right action of the base algebra.
class Coalgebra {
 public:
  Coalgebra(CDGA base, DegreeWindow window);

  const CDGA& base_algebra() const { return complex_.algebra(); }
  const DegreeWindow& window() const { return window_; }
  bool in_window(int degree) const { return degree >= window_.lo && degree <= window_.hi; }

  // Base monomials of the given degree (their duals form the degree-d dual
  // basis).  Empty outside the window.
  const std::vector<Monomial>& basis(int degree) const;
  // All basis monomials in the window, by ascending degree then monomial order.
  std::vector<Monomial> all_basis() const;

  // Structured display name for the dual of m:  "1" for the counit,
  // "beta_j" for b^j, "gamma_k" (k = degree) for b^j*y, "theta_q" factors for
  // Chern-type generators c_q, joined by "(x)"; anything else falls back to
  // "dual{...}".
  std::string dual_name(const Monomial& m) const;

  // Delta(dual(m)) = sum over ordered factorizations m1*m2 = ±m of
  // (dual(m1), dual(m2), Koszul sign).
  struct ComultTerm {
    Monomial left;
    Monomial right;
    Rational coef;
  };
  std::vector<ComultTerm> comultiplication(const Monomial& m) const;

  // The plain transpose of the base differential:
  // <transpose(dual m), m'> = coefficient of m in d(m').  Lowers degree by 1.
  std::map<Monomial, Rational> dual_differential(const Monomial& m) const;

  // cap(dual(m), p): <cap(beta, p), m'> = <beta, p*m'>.
  struct CapResult {
    std::map<Monomial, Rational> value;
    bool truncated = false;  // some contribution fell below the window
  };
  CapResult cap(const Monomial& m, const Polynomial& p) const;

 private:
  CdgaComplex complex_;
  DegreeWindow window_;
  std::vector<std::vector<Monomial>> bases_;  // index = degree - window_.lo
  std::vector<Monomial> empty_;
};

}  // namespace rht
