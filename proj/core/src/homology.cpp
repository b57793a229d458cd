#include "rht/homology.hpp"

#include <algorithm>
#include <stdexcept>

namespace rht {

void DegreeWindow::validate() const {
  if (lo > hi) throw std::invalid_argument("DegreeWindow: lo > hi");
  if (hi - lo > kMaxWidth) throw std::invalid_argument("DegreeWindow: wider than 64 degrees");
}

CdgaComplex::CdgaComplex(CDGA algebra, std::size_t enumeration_guard)
    : algebra_(std::move(algebra)), guard_(enumeration_guard) {
  for (const auto& g : algebra_.generators())
    if (g.degree < 1)
      throw std::invalid_argument("CdgaComplex: generator " + g.name +
                                  " has degree < 1; basis enumeration requires positive degrees");
}

std::vector<Monomial> CdgaComplex::basis(int degree) const {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  if (degree == 0) {
    out.push_back(Monomial::unit());
    return out;
  }
  const auto& gens = algebra_.generators();
  std::vector<Monomial::Factor> stack;
  // Enumerate exponent vectors recursively over the generator list.
  std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int remaining) {
    if (remaining == 0) {
      auto m = Monomial::from_factors(stack);
      if (m) {
        out.push_back(std::move(*m));
        if (out.size() > guard_)
          throw std::runtime_error("CdgaComplex::basis: enumeration guard exceeded in degree " +
                                   std::to_string(degree));
      }
      return;
    }
    if (idx == gens.size()) return;
    const Generator& g = gens[idx];
    int max_exp = remaining / g.degree;
    if (g.is_odd()) max_exp = std::min(max_exp, 1);
    auto t = algebra_.truncation_of(g);
    if (t) max_exp = std::min(max_exp, *t - 1);
    for (int e = 0; e <= max_exp; ++e) {
      if (e > 0) stack.push_back({g, e});
      rec(idx + 1, remaining - e * g.degree);
      if (e > 0) stack.pop_back();
    }
  };
  rec(0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

Polynomial CdgaComplex::differential(const Monomial& m) const {
  return algebra_.apply_differential(Polynomial::term(m, Rational(1)));
}

UnitPlusIdealComplex::UnitPlusIdealComplex(CDGA ambient, Generator ideal_generator,
                                           std::size_t enumeration_guard)
    : full_(std::move(ambient), enumeration_guard), g_(std::move(ideal_generator)) {
  if (!full_.algebra().has_generator(g_))
    throw std::invalid_argument("UnitPlusIdealComplex: unknown ideal generator " + g_.name);
  if (!full_.algebra().differential_of(g_).is_zero())
    throw std::invalid_argument(
        "UnitPlusIdealComplex: ideal generator must be a cycle for the ideal to be a "
        "differential ideal");
}

std::vector<Monomial> UnitPlusIdealComplex::basis(int degree) const {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  if (degree == 0) {
    out.push_back(Monomial::unit());
    return out;
  }
  for (auto& m : full_.basis(degree))
    if (m.contains(g_)) out.push_back(std::move(m));
  return out;
}

Polynomial UnitPlusIdealComplex::differential(const Monomial& m) const {
  return full_.differential(m);
}

QMat differential_matrix(const ChainComplexView& view, int degree) {
  std::vector<Monomial> dom = view.basis(degree);
  std::vector<Monomial> cod = view.basis(degree + 1);
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < cod.size(); ++i) index[cod[i]] = i;

  QMat mat(cod.size(), dom.size());
  for (std::size_t j = 0; j < dom.size(); ++j) {
    Polynomial d = view.differential(dom[j]);
    for (const auto& [m, c] : d.terms()) {
      auto it = index.find(m);
      if (it == index.end())
        throw std::runtime_error("differential_matrix: image monomial " + m.str() +
                                 " missing from the degree " + std::to_string(degree + 1) +
                                 " basis");
      mat.at(it->second, j) = c;
    }
  }
  return mat;
}

std::map<int, long> betti_numbers(const ChainComplexView& view, DegreeWindow window) {
  window.validate();
  std::map<int, long> dims;    // dim C^k
  std::map<int, long> dranks;  // rank of d : C^k -> C^{k+1}
  for (int k = window.lo - 1; k <= window.hi; ++k) {
    if (k < 0) {
      dims[k] = 0;
      dranks[k] = 0;
      continue;
    }
    dims[k] = static_cast<long>(view.basis(k).size());
    dranks[k] = rank(differential_matrix(view, k));
  }
  dims[window.hi + 1] = window.hi + 1 >= 0
                            ? static_cast<long>(view.basis(window.hi + 1).size())
                            : 0;

  std::map<int, long> betti;
  for (int k = window.lo; k <= window.hi; ++k)
    betti[k] = dims[k] - dranks[k] - dranks[k - 1];
  return betti;
}

BettiTable betti_table(const ChainComplexView& view, DegreeWindow window) {
  return BettiTable{window, betti_numbers(view, window)};
}

namespace {

std::vector<Rational> coordinates_of(const Polynomial& p,
                                     const std::map<Monomial, std::size_t>& index,
                                     std::size_t dim) {
  std::vector<Rational> v(dim, Rational(0));
  for (const auto& [m, c] : p.terms()) {
    auto it = index.find(m);
    if (it == index.end())
      throw std::runtime_error("is_quasi_iso: image monomial " + m.str() +
                               " lies outside the target complex");
    v[it->second] = c;
  }
  return v;
}

}  // namespace

QuasiIsoReport is_quasi_iso(const ChainComplexView& source, const ChainComplexView& target,
                            const std::function<Polynomial(const Monomial&)>& map,
                            DegreeWindow window) {
  window.validate();
  QuasiIsoReport rep;
  for (int k = window.lo; k <= window.hi; ++k) {
    QuasiIsoDegree row;
    row.degree = k;
    if (k < 0) {
      row.ok = true;
      rep.degrees.push_back(row);
      continue;
    }

    std::vector<Monomial> src_k = source.basis(k);
    std::vector<Monomial> tgt_k = target.basis(k);
    std::map<Monomial, std::size_t> tgt_index;
    for (std::size_t i = 0; i < tgt_k.size(); ++i) tgt_index[tgt_k[i]] = i;

    QMat d_src_k = differential_matrix(source, k);
    QMat d_tgt_k = differential_matrix(target, k);
    long rank_d_src_km1 = k == 0 ? 0 : rank(differential_matrix(source, k - 1));
    long rank_d_tgt_km1 = k == 0 ? 0 : rank(differential_matrix(target, k - 1));

    row.dim_h_source = static_cast<long>(src_k.size()) - rank(d_src_k) - rank_d_src_km1;
    row.dim_h_target = static_cast<long>(tgt_k.size()) - rank(d_tgt_k) - rank_d_tgt_km1;

    // Cycles in the source, pushed through the map.
    auto cycles = kernel_basis(d_src_k);
    QMat mapped(tgt_k.size(), cycles.size());
    for (std::size_t j = 0; j < cycles.size(); ++j) {
      Polynomial image;
      for (std::size_t i = 0; i < src_k.size(); ++i) {
        if (cycles[j][i] == 0) continue;
        image += map(src_k[i]) * cycles[j][i];
      }
      auto col = coordinates_of(image, tgt_index, tgt_k.size());
      for (std::size_t i = 0; i < tgt_k.size(); ++i) mapped.at(i, j) = col[i];
    }

    // Boundaries in the target.
    QMat boundaries = k > 0 ? differential_matrix(target, k - 1) : QMat(tgt_k.size(), 0);

    long rank_b = rank(boundaries);
    row.induced_rank = rank(boundaries.augmented_with(mapped)) - rank_b;
    row.ok = row.induced_rank == row.dim_h_source && row.dim_h_source == row.dim_h_target;
    if (!row.ok) rep.ok = false;
    rep.degrees.push_back(row);
  }
  return rep;
}

}  // namespace rht
