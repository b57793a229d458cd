#pragma once

// Catalog of concrete Sullivan models: classifying-space models, Borel
// constructions of complex and real Grassmannian bundles, Thom-space models,
// gauge-type section-space models for degree-d hypersurface sections of
// projective bundles, and the closed-form invariants attached to the family
// indexed by (n, d).  Every constructor is pure and deterministic; most
// formulas are cross-wired so that two independent derivation paths can be
// compared exactly in the test suite.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rht/cdga.hpp"
#include "rht/dual.hpp"
#include "rht/eliminate.hpp"
#include "rht/homology.hpp"
#include "rht/morphism.hpp"
#include "rht/section.hpp"

namespace rht {

// ---------------------------------------------------------------------------
// Chern / Pontryagin calculus
// ---------------------------------------------------------------------------

// Chern classes of E (x) L for a rank-r bundle E with classes c = (c_1..c_r)
// and a line bundle L with first Chern class ell (degree 2):
//   c_p(E (x) L) = sum_{i=0}^{p} binom(r-i, p-i) ell^{p-i} c_i,  c_0 = 1.
// Returns (c_1..c_r) of the twisted bundle.
std::vector<Polynomial> chern_tensor_line(const std::vector<Polynomial>& c, long r,
                                          const Polynomial& ell);

// Pontryagin and Euler classes of the underlying real bundle of a complex
// rank-n bundle with Chern classes c = (c_1..c_n):
//   p_i = sum_{k=0}^{2i} (-1)^{i+k} c_k c_{2i-k}   (c_0 = 1, out of range = 0),
//   e   = c_n.
struct PontryaginClasses {
  std::vector<Polynomial> p;  // p_1 .. p_n
  Polynomial e;
};

PontryaginClasses real_pontryagin_of_complex(const std::vector<Polynomial>& c, long n);

// ---------------------------------------------------------------------------
// Classifying spaces and the hyperplane-bundle restriction map
// ---------------------------------------------------------------------------

// Model of BU(n): the free algebra on Chern classes c_1..c_n, zero
// differential.
CDGA bu_model(long n);

// Model of BSO(2n): Pontryagin classes p_4..p_{4(n-1)} and the Euler class
// e_{2n}, zero differential.
CDGA bso_model(long n);

// Model of CP^n: Lambda(b_2, y_{2n+1}) with d(y) = b^{n+1}.
CDGA cpn_model(long n);

// Restriction along the evaluation of a rank-(n+1) bundle on the
// tautological line of its projectivization:
//   h : Lambda(c_1..c_{n+1}) -> Lambda(chat) (x) Lambda(ccheck) (x)
//       Lambda(cbar_1..cbar_{n-1}),
//   h(c_p) = sum_i binom(n+1-i, p-i) (chat^{p-i} cbar_i
//                                     + chat^{p-i} ccheck cbar_{i-1}),
// with cbar_0 = 1 and out-of-range cbar = 0.  Both sides carry the zero
// differential.  Requires n >= 2.
Morphism h_map(long n);

// ---------------------------------------------------------------------------
// Complex Grassmannian-of-lines bundle models
// ---------------------------------------------------------------------------

struct Gr1cModels {
  CDGA absolute;        // Lambda(chat, ccheck, s^-1 c_n, s^-1 c_{n+1})
  RelativeModel borel;  // the same fibre over the Lambda(c_1..c_{n+1}) base
};

// Small models of the flag bundle of lines in a rank-(n+1) bundle: the
// absolute fibre model and its Borel construction.  Requires n >= 2.
Gr1cModels gr1c_models(long n);

// Unreduced versions carrying all cbar_p and s^-1 c_p generators, with
// d(s^-1 c_p) = h(c_p) (absolute) resp. h(c_p) - c_p (Borel).  Eliminating
// the contractible pairs (s^-1 c_p, cbar_p), p = 1..n-1, gives the small
// models above up to the documented sign normalization on s^-1 c_n.
CDGA gr1c_raw_absolute(long n);
RelativeModel gr1c_raw_borel(long n);

// The chain of contractible-pair eliminations (s^-1 c_p, cbar_p), p=1..n-1.
Elimination gr1c_eliminate(const CDGA& raw, long n);

// Closed form of the solved generator cbar_p after eliminating the pairs
// above, for 1 <= p < n:
//   absolute: cbar_p = (-1)^p sum_j binom(n+1, j) chat^j ccheck^{p-j}
//   relative: cbar_p = (-1)^p sum_q (-1)^q c_q
//                      sum_i binom(n-q+1, i) chat^i ccheck^{p-q-i}
// `base_classes`, when given, substitutes the listed polynomials for
// c_1..c_{n+1} in the relative form.
Polynomial barc_closed_form(long n, long p, bool relative,
                            const std::optional<std::vector<Polynomial>>& base_classes =
                                std::nullopt);

// ---------------------------------------------------------------------------
// Thom-space models of the line-bundle family over CP^n
// ---------------------------------------------------------------------------

struct ThomModels {
  RelativeModel rel;    // over Lambda(b, y), d(y) = b^{n+1}
  RelativeModel borel;  // over Lambda(b, y) (x) Lambda(c_1..c_{n+1})
};

// Two-generator Thom models Lambda(u_2, t_{2n+1}) over the CP^n base and its
// Borel construction.  Requires n >= 1.
ThomModels thom_complex_models(long n);

// The same models derived through the ideal picture: t := u * x for the
// degree-(2n-1) generator x of the corresponding Grassmannian-of-lines model.
// The Borel variant agrees with thom_complex_models for every n; the plain
// variant matches the chosen orientation exactly when n is odd (even n
// reverses the sign of d(t)).
ThomModels thom_models_via_ideal(long n);

// ---------------------------------------------------------------------------
// Section-space models for degree-d sections (gauge family)
// ---------------------------------------------------------------------------

// Inputs for the fibrewise construction of section-space models: the
// relative model, the dual coalgebra of its non-group base, and the degree
// window used for both.
struct SectionInput {
  RelativeModel model;
  Coalgebra coalgebra;
  DegreeWindow window;
};

// Thom model over the truncated base H*(CP^n) = Q[b]/(b^{n+1}) with
// d(t) = sum_i binom(n+1, i) b^i u^{n-i+1}.  Feeds brown_szczarba.
SectionInput sections_bs_input(long n);

// Thom model over the untruncated Borel base Lambda(b, y) (x) Lambda(W) with
// the Borel differentials.  Feeds conjugation_borel.  Requires n >= 2.
SectionInput sections_borel_input(long n);

// Component of the section-space model at the augmentation sending the
// degree-0 generator u(x)beta_1 to d:
//   Lambda(u(x)1, t(x)1, t(x)beta_1 .. t(x)beta_n),
//   d(t(x)beta_j) = -binom(n+1, j) (d-1)^j (u(x)1)^{n-j+1},  j = 0..n.
CDGA sections_closed_form(long n, long d);

// Borel construction of the group action on the same component:
// additionally carries c_1..c_{n+1} and
//   d(t(x)beta_k) = (-1)^n sum_{q=0}^{n} (-1)^{q-1} c_q binom(n-q+1, k)
//                     sum_{j=0}^{n-q} (-1)^{j+1} binom(k, j) d^{k-j}
//                     (u(x)1)^{n-q-k+1}
//                   + ((1-d)^{n+1} - 1) c_{n-k+1},  k = 0..n,  c_0 = 1.
// The window is recorded for the serialized provenance only; the algebra is
// independent of it.  Requires n >= 2.
CDGA sections_borel(long n, long d, DegreeWindow w);

// Explicit cocycles generating the projective-unitary part of the cohomology
// of sections_closed_form(n, d), for j = 0..n-1 and d != 1:
//   x_{2(n-j)+1} = t(x)beta_j
//       - binom(n+1, j) (d-1)^j / ((n+1) (d-1)^n) *
//         (u(x)1)^{n-j} t(x)beta_n.
std::vector<Polynomial> explicit_pu_cocycles(long n, long d);

// ---------------------------------------------------------------------------
// The orbit map and its invariants
// ---------------------------------------------------------------------------

// Target of the orbit map: Lambda(s^-1 c_1 .. s^-1 c_{n+1}), zero
// differential (the model of the unitary group).
CDGA orbit_target(long n);

// Model of the projective unitary group: Lambda(x_3, x_5, .., x_{2n+1}),
// zero differential.
CDGA pu_reference_model(long n);

// Coefficients of the orbit map: lambda_k = (1-d)^{n+1} - (1-d)^k, k = 0..n.
std::vector<Rational> orbit_coefficients(long n, long d);

// The orbit map Psi: sections_closed_form(n, d) -> orbit_target(n) with
//   Psi(u(x)1) = 0,  Psi(t(x)beta_k) = lambda_k s^-1 c_{n-k+1}.
// Construction verifies Borel compatibility (below) and throws
// std::logic_error if the stated coefficients fail it.
Morphism orbit_map(long n, long d);

// Does the assignment t(x)beta_k |-> lambda[k] * s^-1 c_{n-k+1} extend to a
// map of the Borel constructions?  Checked against sections_borel(n, d): a
// lift into the acyclic extension Lambda(W) (x) Lambda(s^-1 W) with
// d(s^-1 c_q) = c_q must satisfy, for each k, that the coefficient of the
// bare monomial c_{n+1-k} in d(t(x)beta_k) equals lambda[k]; correction
// terms absorb every monomial with two or more base factors, and the k = n
// equation is absorbed by a correction on (u(x)1) whenever the linear
// (u(x)1)-coefficient of d(t(x)beta_n) is nonzero.  `lambda` must have n+1
// entries.
bool orbit_lift_compatible(long n, long d, const std::vector<Rational>& lambda);

struct OrbitDecision {
  bool iso = false;
  std::vector<int> kernelDegrees;  // degrees k >= 1 where H^k(source) maps non-injectively
  QuasiIsoReport diagnostics;      // per-degree induced ranks on [0, 2n+2]
};

// Decides whether the orbit map identifies the cohomology of the section
// space with the projective-unitary part of the target in window [0, 2n+2].
// Computed along two independent routes (nonvanishing of lambda_1..lambda_n,
// and induced ranks per degree against pu_reference_model) which must agree.
OrbitDecision orbit_iso_decision(long n, long d);

// Order of the torsion of the first integral homology of the section space:
// (n+1)(d-1)^n, with 0 encoding an infinite cyclic group (d = 1).  Requires
// d >= 1.
Int h1_torsion_order(long n, long d);

// Characteristic of a degree-d section:
//   (-1)^{n-1} sum_{k=2}^{n+1} binom(n+1, k) d^{k-1},
// the exact division by d of (-1)^{n-1}((d+1)^{n+1} - 1 - (n+1)d).
Int characteristic_of_degree(long n, long d);

// ---------------------------------------------------------------------------
// Real Grassmannian Gr_2 and the smooth Thom-space family
// ---------------------------------------------------------------------------

// Sign choice for d(z) in the Thom models of the real family; `phi` below is
// a chain map exactly for kMinus, which is the default everywhere.
enum class Gr2DzSign { kMinus, kPlus };

std::string to_string(Gr2DzSign sign);
Gr2DzSign gr2_dz_sign_from_string(const std::string& text);

struct Gr2Models {
  // Borel model of the oriented two-plane Grassmannian SO(2n)/(SO(2) x
  // SO(2n-2)) over the BSO(2n) model.
  RelativeModel borel;
  // Restriction H*(BSO(2n)) -> H*(BSO(2) x BSO(2n-2)).
  Morphism iota;
  // Minimal Thom-space model Lambda(u, omega_f, omega_x, omega_fx, z, v, t).
  CDGA thomMinimal;
  // Ambient algebra A = Lambda(e, f, x, y); the Thom complex is the
  // subcomplex Q.1 (+) (e) inside it (see UnitPlusIdealComplex).
  CDGA thomAmbient;
  Generator thomEuler;  // the generator e of thomAmbient
  // Comparison map thomMinimal -> thomAmbient with image in the ideal (e).
  Morphism phi;
  // The same Thom model fibred over the CP^n model Lambda(b, y).
  RelativeModel overCPn;
};

// All models of the real two-plane family.  `pontryagin`, when given, lists
// the n polynomials P_0..P_{n-1} in b (P_i homogeneous of degree 4i) used as
// the Pontryagin classes of the base in d(z); the default is
// P_i = binom(n+1, i) b^{2i}, the coefficients of (1 + b^2)^{n+1}.
// Requires n >= 2.
Gr2Models gr2_models(long n, Gr2DzSign dz = Gr2DzSign::kMinus,
                     const std::optional<std::vector<Polynomial>>& pontryagin = std::nullopt);

// Fibrewise section-space input for the smooth family: the overCPn model and
// the dual coalgebra of Lambda(b, y).  Requires n >= 2.
SectionInput smooth_sections_input(long n, Gr2DzSign dz = Gr2DzSign::kMinus);

// Section-space model of the smooth family, built with brown_szczarba under
// the section-3 sign convention (the convention under which the leading term
// of d(omega_x (x) 1) is +(u(x)1)(omega_f(x)1)).  Requires n >= 2.
SectionModel smooth_sections_model(long n, Gr2DzSign dz = Gr2DzSign::kMinus);

// ---------------------------------------------------------------------------
// Evaluation cochains
// ---------------------------------------------------------------------------

struct EtaClasses {
  Polynomial eta_u;                 // -p_{beta_0}(ev(u))
  Polynomial kappa_u;               // the class of u(x)1
  std::vector<Polynomial> eta_t;    // eta_{t,j} = (-1)^{j+1} p_{beta_j}(ev(t)), j = 0..n
  std::vector<Polynomial> eta_odd;  // eta_{2n+1-2j} = (n+1) eta_{t,j}
                                    //   - binom(n+1,j)(d-1)^{j-n} kappa_u^{n-j} eta_{t,n},
                                    // j = 0..n-1
};

// Cochains defined through the evaluation map of the section-space model
// over the truncated CP^n base (section-4 convention).  eta_odd[j]
// corresponds to (n+1) * explicit_pu_cocycles(n, d)[j].  Requires n >= 1 and
// d != 1.
EtaClasses eta_classes(long n, long d);

// ---------------------------------------------------------------------------
// Combinatorial identities used throughout the closed forms
// ---------------------------------------------------------------------------

struct IdentityCheckReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// Exhaustively verifies, for all parameters up to n_max (<= 64):
//   binom(n,k) binom(n-k,j) = binom(n,k+j) binom(k+j,j)
//   sum_i (-1)^i binom(p,i) = 0 for p >= 1.
IdentityCheckReport combinatorial_identities_check(long n_max);

// ---------------------------------------------------------------------------
// Invariant report for a concrete (n, d)
// ---------------------------------------------------------------------------

struct InvariantReport {
  long n = 0;
  long d = 0;
  Int h1TorsionOrder;  // |(n+1)(d-1)^n|; 0 encodes an infinite cyclic group
  BettiTable betti;    // of sections_closed_form(n, d) on [0, n(n+2)]
  bool orbitIso = false;
  std::vector<int> orbitKernelDegrees;
  Int characteristic;
};

InvariantReport invariant_report(long n, long d);

// ---------------------------------------------------------------------------
// String-keyed catalog lookup
// ---------------------------------------------------------------------------

enum class CatalogFamily {
  kBU,
  kBSO,
  kCPn,
  kGr1cAbs,
  kGr1cBorel,
  kThomRel,
  kThomBorel,
  kSections,
  kSectionsBorel,
  kOrbitTarget,
  kGr2Borel,
  kGr2ThomMinimal,
  kGr2ThomIdeal,
  kGr2OverCPn,
  kGr2Sections,
};

struct CatalogKey {
  CatalogFamily family = CatalogFamily::kBU;
  long n = 0;
  std::optional<long> d;

  // "gr1c-borel:n=3", "sections:n=2,d=3"
  std::string str() const;
  static CatalogKey parse(const std::string& text);  // throws std::invalid_argument

  bool operator<(const CatalogKey& other) const;
};

// All family names accepted by CatalogKey::parse, in catalog order.
std::vector<std::string> catalog_family_names();

// The CDGA presented by a catalog key (the total algebra for relative
// families; the ambient algebra for the ideal-based Thom model).  Throws
// std::invalid_argument for out-of-range parameters or a missing d.
CDGA catalog_model(const CatalogKey& key, Gr2DzSign dz = Gr2DzSign::kMinus);

// d^2 = 0 plus the chain-map checks attached to the key's family (phi for the
// real Thom models, Borel compatibility of the orbit map for the section
// families, base inclusion for relative families).
struct CatalogCheck {
  bool d2_ok = true;
  std::vector<std::string> d2_failures;
  bool chain_ok = true;
  std::vector<std::string> chain_failures;
};

CatalogCheck catalog_check(const CatalogKey& key, Gr2DzSign dz = Gr2DzSign::kMinus);

}  // namespace rht
