#include "rht/dual.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace rht {

std::string to_string(SignConvention c) {
  return c == SignConvention::kSection3 ? "section-3" : "section-4";
}

std::optional<SignConvention> sign_convention_from_string(const std::string& s) {
  if (s == "section-3") return SignConvention::kSection3;
  if (s == "section-4") return SignConvention::kSection4;
  return std::nullopt;
}

int alpha_sign(long r) {
  if (r < 0) throw std::domain_error("alpha_sign: negative degree");
  return parity_sign((r + 1) / 2);
}

int absorption_sign(SignConvention c, long r) {
  return c == SignConvention::kSection3 ? alpha_sign(r) : -alpha_sign(r);
}

Coalgebra::Coalgebra(CDGA base, DegreeWindow window)
    : complex_(std::move(base)), window_(window) {
  window_.validate();
  if (window_.lo < 0) throw std::invalid_argument("Coalgebra: window must start at degree >= 0");
  bases_.reserve(static_cast<std::size_t>(window_.hi - window_.lo + 1));
  for (int k = window_.lo; k <= window_.hi; ++k) bases_.push_back(complex_.basis(k));
}

const std::vector<Monomial>& Coalgebra::basis(int degree) const {
  if (degree < window_.lo || degree > window_.hi) return empty_;
  return bases_[static_cast<std::size_t>(degree - window_.lo)];
}

std::vector<Monomial> Coalgebra::all_basis() const {
  std::vector<Monomial> out;
  for (const auto& bs : bases_) out.insert(out.end(), bs.begin(), bs.end());
  return out;
}

namespace {

std::optional<long> chern_index(const std::string& name) {
  if (name.size() < 3 || name.compare(0, 2, "c_") != 0) return std::nullopt;
  for (std::size_t i = 2; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
  return std::stol(name.substr(2));
}

}  // namespace

std::string Coalgebra::dual_name(const Monomial& m) const {
  if (m.is_unit()) return "1";
  int b_exp = 0;
  bool has_y = false;
  int by_degree = 0;
  std::vector<long> thetas;
  for (const auto& [g, e] : m.factors()) {
    if (g.name == "b") {
      b_exp = e;
      by_degree += g.degree * e;
      continue;
    }
    if (g.name == "y" && e == 1) {
      has_y = true;
      by_degree += g.degree;
      continue;
    }
    auto q = chern_index(g.name);
    if (q && e == 1) {
      thetas.push_back(*q);
      continue;
    }
    return "dual{" + m.str() + "}";
  }
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const std::string& piece) {
    if (!first) os << "(x)";
    first = false;
    os << piece;
  };
  if (has_y) {
    emit("gamma_" + std::to_string(by_degree));
  } else if (b_exp > 0) {
    emit("beta_" + std::to_string(b_exp));
  }
  std::sort(thetas.begin(), thetas.end());
  for (long q : thetas) emit("theta_" + std::to_string(q));
  return os.str();
}

std::vector<Coalgebra::ComultTerm> Coalgebra::comultiplication(const Monomial& m) const {
  // Enumerate ordered factorizations by choosing a sub-exponent for each
  // factor; the coefficient is the Koszul sign of re-merging m1 * m2.
  std::vector<ComultTerm> out;
  const auto& fs = m.factors();
  std::vector<int> pick(fs.size(), 0);
  while (true) {
    std::vector<Monomial::Factor> left_f, right_f;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (pick[i] > 0) left_f.push_back({fs[i].first, pick[i]});
      if (fs[i].second - pick[i] > 0) right_f.push_back({fs[i].first, fs[i].second - pick[i]});
    }
    auto left = Monomial::from_factors(left_f);
    auto right = Monomial::from_factors(right_f);
    if (left && right) {
      auto prod = Monomial::multiply(*left, *right);
      if (prod && prod->second == m)
        out.push_back({*left, *right, Rational(prod->first)});
    }
    // Next exponent selection.
    std::size_t i = 0;
    for (; i < fs.size(); ++i) {
      if (pick[i] < fs[i].second) {
        ++pick[i];
        break;
      }
      pick[i] = 0;
    }
    if (i == fs.size()) break;
  }
  return out;
}

std::map<Monomial, Rational> Coalgebra::dual_differential(const Monomial& m) const {
  std::map<Monomial, Rational> out;
  int target = m.degree() - 1;
  if (target < 0) return out;
  for (const auto& mp : basis(target)) {
    Polynomial d = complex_.differential(mp);
    Rational c = d.coefficient(m);
    if (c != 0) out[mp] = c;
  }
  return out;
}

Coalgebra::CapResult Coalgebra::cap(const Monomial& m, const Polynomial& p) const {
  CapResult res;
  for (const auto& [q, c] : p.terms()) {
    auto quotient = m.divide_by(q);
    if (!quotient) continue;  // genuinely zero pairing
    int target = m.degree() - q.degree();
    if (target < window_.lo) {
      res.truncated = true;
      continue;
    }
    auto prod = Monomial::multiply(q, *quotient);
    if (!prod) continue;
    Rational add = c * prod->first;
    auto [it, inserted] = res.value.try_emplace(*quotient, add);
    if (!inserted) {
      it->second += add;
      if (it->second == 0) res.value.erase(it);
    }
  }
  return res;
}

}  // namespace rht
