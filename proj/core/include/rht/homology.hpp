#pragma once

#include "rht/cdga.hpp"
#include "rht/linalg.hpp"

#include <functional>
#include <map>
#include <memory>
#include <vector>

namespace rht {

// Inclusive degree range for cohomology computations.  Windows wider than
// kMaxWidth are rejected to keep enumeration bounded.
struct DegreeWindow {
  int lo = 0;
  int hi = 0;
  static constexpr int kMaxWidth = 64;

  void validate() const;
};

// A graded cochain complex of finite-dimensional Q vector spaces, presented
// by a monomial basis per degree and a degree +1 differential.  Abstracting
// over this lets non-free subcomplexes (e.g. the ideal generated by an Euler
// class, modelling a Thom space) reuse the same rank machinery.
class ChainComplexView {
 public:
  virtual ~ChainComplexView() = default;
  virtual std::vector<Monomial> basis(int degree) const = 0;
  virtual Polynomial differential(const Monomial& m) const = 0;
};

// The full free (possibly truncated) CDGA as a complex.  All generators must
// have degree >= 1; the unit spans degree 0.
class CdgaComplex : public ChainComplexView {
 public:
  explicit CdgaComplex(CDGA algebra, std::size_t enumeration_guard = 2'000'000);

  std::vector<Monomial> basis(int degree) const override;
  Polynomial differential(const Monomial& m) const override;

  const CDGA& algebra() const { return algebra_; }

 private:
  CDGA algebra_;
  std::size_t guard_;
};

// The subcomplex Q.1 (+) (g), the principal ideal on a cycle generator g
// together with the unit in degree zero.  This is the cochain model of a
// Thom space sitting inside the ambient algebra.
class UnitPlusIdealComplex : public ChainComplexView {
 public:
  UnitPlusIdealComplex(CDGA ambient, Generator ideal_generator,
                       std::size_t enumeration_guard = 2'000'000);

  std::vector<Monomial> basis(int degree) const override;
  Polynomial differential(const Monomial& m) const override;

 private:
  CdgaComplex full_;
  Generator g_;
};

// Betti numbers dim H^k for k in [window.lo, window.hi].
std::map<int, long> betti_numbers(const ChainComplexView& view, DegreeWindow window);

// Betti numbers together with the window they were computed on.
struct BettiTable {
  DegreeWindow window;
  std::map<int, long> ranks;
};

BettiTable betti_table(const ChainComplexView& view, DegreeWindow window);

// Matrix of the differential C^k -> C^{k+1} in the monomial bases.
QMat differential_matrix(const ChainComplexView& view, int degree);

struct QuasiIsoDegree {
  int degree = 0;
  long dim_h_source = 0;
  long dim_h_target = 0;
  long induced_rank = 0;  // rank of H^k(map)
  bool ok = false;
};

struct QuasiIsoReport {
  bool ok = true;
  std::vector<QuasiIsoDegree> degrees;
};

// Does the chain map induce an isomorphism on H^k for every k in the window?
// `map` sends a source basis monomial to its image in the target complex; the
// image must lie in the span of the target's bases.
QuasiIsoReport is_quasi_iso(const ChainComplexView& source, const ChainComplexView& target,
                            const std::function<Polynomial(const Monomial&)>& map,
                            DegreeWindow window);

}  // namespace rht
