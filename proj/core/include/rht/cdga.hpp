#pragma once

#include "rht/algebra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rht {

// A commutative differential graded algebra presented as a free
// graded-commutative algebra Lambda(V) on named generators, with a degree +1
// differential given on generators, plus optional per-generator power
// truncations (a generator g with truncation k satisfies g^k = 0, so the
// algebra is Lambda(V) / (g^k)).  Truncations model cohomology rings such as
// H*(CP^n) = Q[b]/(b^{n+1}).
class CDGA {
 public:
  CDGA() = default;

  // -- construction ---------------------------------------------------------
  void add_generator(const Generator& g);
  void set_differential(const Generator& g, Polynomial dg);
  void set_truncation(const Generator& g, int power);  // g^power = 0

  // -- access ---------------------------------------------------------------
  const std::vector<Generator>& generators() const { return gens_; }
  bool has_generator(const Generator& g) const;
  std::optional<Generator> generator_by_name(const std::string& name) const;
  const Polynomial& differential_of(const Generator& g) const;
  const std::map<Generator, int>& truncations() const { return trunc_; }
  std::optional<int> truncation_of(const Generator& g) const;

  // -- algebra operations ---------------------------------------------------
  // Set monomials containing g^e with e >= truncation(g) to zero.
  Polynomial reduce(Polynomial p) const;
  bool monomial_vanishes(const Monomial& m) const;

  // Truncation-aware product and powers.
  Polynomial multiply(const Polynomial& a, const Polynomial& b) const {
    return reduce(a * b);
  }
  Polynomial power(const Polynomial& a, int e) const;

  // Extend the generator differential to polynomials by the graded Leibniz
  // rule, then reduce.
  Polynomial apply_differential(const Polynomial& p) const;

  // -- validation -----------------------------------------------------------
  struct DSquaredReport {
    bool ok = true;
    // Generators with d(d(g)) != 0, with the offending residue.
    std::vector<std::pair<Generator, Polynomial>> failures;
  };
  // Checks d(dg) == 0 for every generator, that each dg is homogeneous of
  // degree |g|+1, and that dg only uses known generators.
  DSquaredReport check_d_squared() const;

  // Every generator of p's monomials is a generator of this algebra.
  bool contains_polynomial(const Polynomial& p) const;

  std::string str() const;

 private:
  std::vector<Generator> gens_;  // sorted by (degree, name)
  std::map<Generator, Polynomial> diff_;
  std::map<Generator, int> trunc_;
};

// Build a CDGA generator list quickly in tests and the catalog.
CDGA make_cdga(std::vector<Generator> gens,
               std::vector<std::pair<std::string, Polynomial>> diffs = {},
               std::vector<std::pair<std::string, int>> truncations = {});

}  // namespace rht
