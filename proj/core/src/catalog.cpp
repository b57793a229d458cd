#include "rht/catalog.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace rht {

namespace {

Polynomial gp(const Generator& g) { return Polynomial::generator(g); }

std::string indexed(const std::string& prefix, long i) {
  return prefix + "_" + std::to_string(i);
}

Generator chern_generator(long q) { return Generator{indexed("c", q), static_cast<int>(2 * q)}; }

Generator desuspended_chern(long q) {
  return Generator{"s^-1 c_" + std::to_string(q), static_cast<int>(2 * q - 1)};
}

void require(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument(message);
}

Rational int_rat(const Int& v) { return Rational(v); }

// (d-1)^e and friends as exact integers.
Int ipow(long base, long e) { return int_pow(Int(base), static_cast<unsigned long>(e)); }

}  // namespace

// ---------------------------------------------------------------------------
// Chern / Pontryagin calculus
// ---------------------------------------------------------------------------

std::vector<Polynomial> chern_tensor_line(const std::vector<Polynomial>& c, long r,
                                          const Polynomial& ell) {
  require(r >= 0, "chern_tensor_line: rank must be nonnegative");
  require(static_cast<long>(c.size()) == r,
          "chern_tensor_line: expected exactly r Chern classes");
  for (const auto& [m, coef] : ell.terms())
    require(m.degree() == 2, "chern_tensor_line: the line class must have degree 2");

  std::vector<Polynomial> out;
  out.reserve(static_cast<std::size_t>(r));
  for (long p = 1; p <= r; ++p) {
    Polynomial cp;
    for (long i = 0; i <= p; ++i) {
      Int binom = binomial(r - i, p - i);
      if (binom == 0) continue;
      Polynomial ci = (i == 0) ? Polynomial::one() : c[static_cast<std::size_t>(i - 1)];
      cp += ell.pow(static_cast<int>(p - i)) * ci * int_rat(binom);
    }
    out.push_back(std::move(cp));
  }
  return out;
}

PontryaginClasses real_pontryagin_of_complex(const std::vector<Polynomial>& c, long n) {
  require(n >= 0, "real_pontryagin_of_complex: n must be nonnegative");
  require(static_cast<long>(c.size()) == n,
          "real_pontryagin_of_complex: expected exactly n Chern classes");
  auto chern = [&](long k) -> Polynomial {
    if (k == 0) return Polynomial::one();
    if (k < 0 || k > n) return Polynomial::zero();
    return c[static_cast<std::size_t>(k - 1)];
  };

  PontryaginClasses out;
  for (long i = 1; i <= n; ++i) {
    Polynomial pi;
    for (long k = 0; k <= 2 * i; ++k)
      pi += chern(k) * chern(2 * i - k) * Rational(parity_sign(i + k));
    out.p.push_back(std::move(pi));
  }
  out.e = chern(n);
  return out;
}

// ---------------------------------------------------------------------------
// Classifying spaces
// ---------------------------------------------------------------------------

CDGA bu_model(long n) {
  require(n >= 1, "bu_model: n must be at least 1");
  std::vector<Generator> gens;
  for (long q = 1; q <= n; ++q) gens.push_back(chern_generator(q));
  return make_cdga(std::move(gens));
}

CDGA bso_model(long n) {
  require(n >= 1, "bso_model: n must be at least 1");
  std::vector<Generator> gens;
  for (long i = 1; i <= n - 1; ++i)
    gens.push_back(Generator{indexed("p", 4 * i), static_cast<int>(4 * i)});
  gens.push_back(Generator{indexed("e", 2 * n), static_cast<int>(2 * n)});
  return make_cdga(std::move(gens));
}

CDGA cpn_model(long n) {
  require(n >= 1, "cpn_model: n must be at least 1");
  Generator b{"b", 2};
  Generator y{"y", static_cast<int>(2 * n + 1)};
  return make_cdga({b, y}, {{"y", gp(b).pow(static_cast<int>(n + 1))}});
}

// ---------------------------------------------------------------------------
// The restriction map h
// ---------------------------------------------------------------------------

namespace {

struct HTarget {
  CDGA algebra;
  Generator chat{"chat", 2};
  Generator ccheck{"ccheck", 2};
  std::vector<Generator> cbar;  // cbar_1 .. cbar_{n-1}
};

HTarget h_target(long n) {
  HTarget t;
  std::vector<Generator> gens{t.chat, t.ccheck};
  for (long i = 1; i <= n - 1; ++i) {
    Generator g{indexed("cbar", i), static_cast<int>(2 * i)};
    t.cbar.push_back(g);
    gens.push_back(g);
  }
  t.algebra = make_cdga(std::move(gens));
  return t;
}

// cbar_i as a polynomial, with cbar_0 = 1 and out-of-range = 0.
Polynomial cbar_poly(const HTarget& t, long n, long i) {
  if (i == 0) return Polynomial::one();
  if (i < 0 || i > n - 1) return Polynomial::zero();
  return gp(t.cbar[static_cast<std::size_t>(i - 1)]);
}

// The image h(c_p) inside the target of h_map.
Polynomial h_image(const HTarget& t, long n, long p) {
  Polynomial out;
  for (long i = 0; i <= p; ++i) {
    Int binom = binomial(n + 1 - i, p - i);
    if (binom == 0) continue;
    Polynomial chat_pow = gp(t.chat).pow(static_cast<int>(p - i));
    out += chat_pow * cbar_poly(t, n, i) * int_rat(binom);
    out += chat_pow * gp(t.ccheck) * cbar_poly(t, n, i - 1) * int_rat(binom);
  }
  return out;
}

}  // namespace

Morphism h_map(long n) {
  require(n >= 2, "h_map: n must be at least 2");
  CDGA source = bu_model(n + 1);
  HTarget target = h_target(n);
  Morphism h(source, target.algebra);
  for (long p = 1; p <= n + 1; ++p)
    h.set_image(chern_generator(p), h_image(target, n, p));
  return h;
}

// ---------------------------------------------------------------------------
// Grassmannian-of-lines models
// ---------------------------------------------------------------------------

namespace {

// d(s^-1 c_n) of the small absolute model.
Polynomial gr1c_abs_diff_n(const HTarget& t, long n) {
  Polynomial out;
  for (long j = 0; j <= n; ++j)
    out += gp(t.chat).pow(static_cast<int>(j)) * gp(t.ccheck).pow(static_cast<int>(n - j)) *
           int_rat(binomial(n + 1, j));
  return out * Rational(parity_sign(n));
}

// d(s^-1 c_{n+1}) of the small absolute model.
Polynomial gr1c_abs_diff_n1(const HTarget& t, long n) {
  Polynomial out = gp(t.chat).pow(static_cast<int>(n + 1)) * Rational(n);
  for (long j = 0; j <= n - 1; ++j)
    out += gp(t.chat).pow(static_cast<int>(j + 1)) *
           gp(t.ccheck).pow(static_cast<int>(n - j)) * int_rat(binomial(n + 1, j));
  return out * Rational(parity_sign(n + 1));
}

// c_q as a polynomial with c_0 = 1 (for the Borel differentials).
Polynomial cq_poly(long q) {
  if (q == 0) return Polynomial::one();
  return gp(chern_generator(q));
}

// d(s^-1 c_n) of the small Borel model.
Polynomial gr1c_borel_diff_n(const HTarget& t, long n) {
  Polynomial out;
  for (long q = 0; q <= n; ++q) {
    Polynomial inner;
    for (long j = 0; j <= n - q; ++j)
      inner += gp(t.chat).pow(static_cast<int>(j)) *
               gp(t.ccheck).pow(static_cast<int>(n - q - j)) * int_rat(binomial(n - q + 1, j));
    out += cq_poly(q) * inner * Rational(parity_sign(n + q - 1));
  }
  return out;
}

// d(s^-1 c_{n+1}) of the small Borel model.
Polynomial gr1c_borel_diff_n1(const HTarget& t, long n) {
  Polynomial out;
  for (long q = 0; q <= n + 1; ++q) {
    Polynomial inner = gp(t.chat).pow(static_cast<int>(n - q + 1)) * Rational(n - q);
    for (long j = 0; j <= n - q - 1; ++j)
      inner += gp(t.chat).pow(static_cast<int>(j + 1)) *
               gp(t.ccheck).pow(static_cast<int>(n - q - j)) * int_rat(binomial(n - q + 1, j));
    out += cq_poly(q) * inner * Rational(parity_sign(n + q + 1));
  }
  return out;
}

}  // namespace

Gr1cModels gr1c_models(long n) {
  require(n >= 2, "gr1c_models: n must be at least 2");
  HTarget t = h_target(n);
  Generator sn = desuspended_chern(n);
  Generator sn1 = desuspended_chern(n + 1);

  Gr1cModels out;
  out.absolute = make_cdga({t.chat, t.ccheck, sn, sn1},
                           {{sn.name, gr1c_abs_diff_n(t, n)},
                            {sn1.name, gr1c_abs_diff_n1(t, n)}});

  CDGA base = bu_model(n + 1);
  std::vector<Generator> total_gens;
  for (long q = 1; q <= n + 1; ++q) total_gens.push_back(chern_generator(q));
  total_gens.insert(total_gens.end(), {t.chat, t.ccheck, sn, sn1});
  CDGA total = make_cdga(total_gens, {{sn.name, gr1c_borel_diff_n(t, n)},
                                      {sn1.name, gr1c_borel_diff_n1(t, n)}});
  out.borel = RelativeModel{std::move(base), {t.chat, t.ccheck, sn, sn1}, std::move(total), {}};
  out.borel.validate();
  return out;
}

CDGA gr1c_raw_absolute(long n) {
  require(n >= 2, "gr1c_raw_absolute: n must be at least 2");
  HTarget t = h_target(n);
  std::vector<Generator> gens{t.chat, t.ccheck};
  gens.insert(gens.end(), t.cbar.begin(), t.cbar.end());
  std::vector<std::pair<std::string, Polynomial>> diffs;
  for (long p = 1; p <= n + 1; ++p) {
    Generator sp = desuspended_chern(p);
    gens.push_back(sp);
    diffs.emplace_back(sp.name, h_image(t, n, p));
  }
  return make_cdga(std::move(gens), std::move(diffs));
}

RelativeModel gr1c_raw_borel(long n) {
  require(n >= 2, "gr1c_raw_borel: n must be at least 2");
  HTarget t = h_target(n);
  CDGA base = bu_model(n + 1);

  std::vector<Generator> fiber{t.chat, t.ccheck};
  fiber.insert(fiber.end(), t.cbar.begin(), t.cbar.end());
  std::vector<Generator> gens;
  for (long q = 1; q <= n + 1; ++q) gens.push_back(chern_generator(q));
  gens.insert(gens.end(), fiber.begin(), fiber.end());
  std::vector<std::pair<std::string, Polynomial>> diffs;
  for (long p = 1; p <= n + 1; ++p) {
    Generator sp = desuspended_chern(p);
    gens.push_back(sp);
    fiber.push_back(sp);
    diffs.emplace_back(sp.name, h_image(t, n, p) - gp(chern_generator(p)));
  }
  CDGA total = make_cdga(std::move(gens), std::move(diffs));
  RelativeModel out{std::move(base), std::move(fiber), std::move(total), {}};
  out.validate();
  return out;
}

Elimination gr1c_eliminate(const CDGA& raw, long n) {
  require(n >= 2, "gr1c_eliminate: n must be at least 2");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (long p = 1; p <= n - 1; ++p)
    pairs.emplace_back(desuspended_chern(p).name, indexed("cbar", p));
  return eliminate_chain(raw, pairs);
}

Polynomial barc_closed_form(long n, long p, bool relative,
                            const std::optional<std::vector<Polynomial>>& base_classes) {
  require(n >= 2, "barc_closed_form: n must be at least 2");
  require(p >= 1 && p < n, "barc_closed_form: p must satisfy 1 <= p < n");
  HTarget t = h_target(n);

  if (!relative) {
    Polynomial out;
    for (long j = 0; j <= p; ++j)
      out += gp(t.chat).pow(static_cast<int>(j)) * gp(t.ccheck).pow(static_cast<int>(p - j)) *
             int_rat(binomial(n + 1, j));
    return out * Rational(parity_sign(p));
  }

  if (base_classes)
    require(static_cast<long>(base_classes->size()) >= p,
            "barc_closed_form: need base classes c_1..c_p at least");
  auto base_q = [&](long q) -> Polynomial {
    if (q == 0) return Polynomial::one();
    if (base_classes) return (*base_classes)[static_cast<std::size_t>(q - 1)];
    return cq_poly(q);
  };
  Polynomial out;
  for (long q = 0; q <= p; ++q) {
    Polynomial inner;
    for (long i = 0; i <= p - q; ++i)
      inner += gp(t.chat).pow(static_cast<int>(i)) *
               gp(t.ccheck).pow(static_cast<int>(p - q - i)) * int_rat(binomial(n - q + 1, i));
    out += base_q(q) * inner * Rational(parity_sign(q));
  }
  return out * Rational(parity_sign(p));
}

// ---------------------------------------------------------------------------
// Thom-space models over CP^n
// ---------------------------------------------------------------------------

namespace {

const Generator kB{"b", 2};
const Generator kU{"u", 2};

Generator y_generator(long n) { return Generator{"y", static_cast<int>(2 * n + 1)}; }
Generator t_generator(long n) { return Generator{"t", static_cast<int>(2 * n + 1)}; }

// d(t) of the plain Thom model: (-1)^n sum_i binom(n+1, i) b^i u^{n-i+1}.
Polynomial thom_rel_dt(long n) {
  Polynomial out;
  for (long i = 0; i <= n; ++i)
    out += gp(kB).pow(static_cast<int>(i)) * gp(kU).pow(static_cast<int>(n - i + 1)) *
           int_rat(binomial(n + 1, i));
  return out * Rational(parity_sign(n));
}

// d(y) of the Borel base: sum_q (-1)^q c_q b^{n+1-q}.
Polynomial thom_borel_dy(long n) {
  Polynomial out;
  for (long q = 0; q <= n + 1; ++q)
    out += cq_poly(q) * gp(kB).pow(static_cast<int>(n + 1 - q)) * Rational(parity_sign(q));
  return out;
}

// d(t) of the Borel Thom model:
// sum_q (-1)^{q-1} c_q sum_j binom(n-q+1, j) b^j u^{n-q-j+1}.
Polynomial thom_borel_dt(long n) {
  Polynomial out;
  for (long q = 0; q <= n; ++q) {
    Polynomial inner;
    for (long j = 0; j <= n - q; ++j)
      inner += gp(kB).pow(static_cast<int>(j)) * gp(kU).pow(static_cast<int>(n - q - j + 1)) *
               int_rat(binomial(n - q + 1, j));
    out += cq_poly(q) * inner * Rational(parity_sign(q - 1));
  }
  return out;
}

RelativeModel thom_rel_model(long n, Polynomial dt) {
  Generator y = y_generator(n);
  Generator t = t_generator(n);
  CDGA base = cpn_model(n);
  CDGA total = make_cdga({kB, y, kU, t},
                         {{"y", gp(kB).pow(static_cast<int>(n + 1))}, {"t", std::move(dt)}});
  RelativeModel out{std::move(base), {kU, t}, std::move(total), {}};
  out.validate();
  return out;
}

RelativeModel thom_borel_model(long n, Polynomial dt) {
  Generator y = y_generator(n);
  Generator t = t_generator(n);
  std::vector<Generator> group;
  for (long q = 1; q <= n + 1; ++q) group.push_back(chern_generator(q));

  std::vector<Generator> base_gens{kB, y};
  base_gens.insert(base_gens.end(), group.begin(), group.end());
  CDGA base = make_cdga(base_gens, {{"y", thom_borel_dy(n)}});

  std::vector<Generator> total_gens = base_gens;
  total_gens.insert(total_gens.end(), {kU, t});
  CDGA total =
      make_cdga(total_gens, {{"y", thom_borel_dy(n)}, {"t", std::move(dt)}});
  RelativeModel out{std::move(base), {kU, t}, std::move(total), std::move(group)};
  out.validate();
  return out;
}

// Rename chat -> b, ccheck -> u in a polynomial of the reduced
// Grassmannian-of-lines model (all remaining generators map to themselves).
Polynomial rename_to_thom(const Polynomial& p) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Monomial::Factor> fs;
    for (const auto& [g, e] : m.factors()) {
      if (g.name == "chat")
        fs.emplace_back(kB, e);
      else if (g.name == "ccheck")
        fs.emplace_back(kU, e);
      else
        fs.emplace_back(g, e);
    }
    auto renamed = Monomial::from_factors(std::move(fs));
    if (!renamed) throw std::logic_error("rename_to_thom: odd generator squared");
    out.add_term(*renamed, c);
  }
  return out;
}

}  // namespace

ThomModels thom_complex_models(long n) {
  require(n >= 1, "thom_complex_models: n must be at least 1");
  return ThomModels{thom_rel_model(n, thom_rel_dt(n)), thom_borel_model(n, thom_borel_dt(n))};
}

ThomModels thom_models_via_ideal(long n) {
  require(n >= 2, "thom_models_via_ideal: n must be at least 2");

  // Plain variant: eliminate the raw model, take x = (-1)^n s^-1 c_n, and
  // read d(t) = u * d(x) after renaming chat -> b, ccheck -> u.
  Elimination abs = gr1c_eliminate(gr1c_raw_absolute(n), n);
  Generator sn = desuspended_chern(n);
  Polynomial dx_abs = abs.reduced.differential_of(sn) * Rational(parity_sign(n));
  Polynomial dt_rel = gp(kU) * rename_to_thom(dx_abs);

  // Borel variant: same recipe inside the Borel raw model.
  Elimination bor = gr1c_eliminate(gr1c_raw_borel(n).total, n);
  Polynomial dx_bor = bor.reduced.differential_of(sn) * Rational(parity_sign(n));
  Polynomial dt_borel = gp(kU) * rename_to_thom(dx_bor);

  return ThomModels{thom_rel_model(n, std::move(dt_rel)),
                    thom_borel_model(n, std::move(dt_borel))};
}

// ---------------------------------------------------------------------------
// Section-space inputs and closed forms
// ---------------------------------------------------------------------------

SectionInput sections_bs_input(long n) {
  require(n >= 1, "sections_bs_input: n must be at least 1");
  Generator t = t_generator(n);

  CDGA base = make_cdga({kB}, {}, {{"b", static_cast<int>(n + 1)}});

  Polynomial dt;
  for (long i = 0; i <= n; ++i)
    dt += gp(kB).pow(static_cast<int>(i)) * gp(kU).pow(static_cast<int>(n - i + 1)) *
          int_rat(binomial(n + 1, i));
  CDGA total = make_cdga({kB, kU, t}, {{"t", std::move(dt)}},
                         {{"b", static_cast<int>(n + 1)}});

  RelativeModel model{base, {kU, t}, std::move(total), {}};
  model.validate();
  DegreeWindow window{0, static_cast<int>(2 * n + 2)};
  Coalgebra coalgebra(std::move(base), window);
  return SectionInput{std::move(model), std::move(coalgebra), window};
}

SectionInput sections_borel_input(long n) {
  require(n >= 2, "sections_borel_input: n must be at least 2");
  RelativeModel model = thom_borel_model(n, thom_borel_dt(n) * Rational(parity_sign(n)));
  DegreeWindow window{0, static_cast<int>(2 * n + 2)};
  // Dual basis of the non-group part of the base only; the correction terms
  // of the Borel differential are read off the base differential directly,
  // so the coalgebra itself carries the zero differential.
  CDGA plain = make_cdga({kB, y_generator(n)});
  Coalgebra coalgebra(std::move(plain), window);
  return SectionInput{std::move(model), std::move(coalgebra), window};
}

namespace {

Generator tensor_u1() { return Generator{"u(x)1", 2}; }

Generator tensor_t_beta(long n, long k) {
  int degree = static_cast<int>(2 * n + 1 - 2 * k);
  if (k == 0) return Generator{"t(x)1", degree};
  return Generator{"t(x)beta_" + std::to_string(k), degree};
}

}  // namespace

CDGA sections_closed_form(long n, long d) {
  require(n >= 1, "sections_closed_form: n must be at least 1");
  Generator u1 = tensor_u1();
  std::vector<Generator> gens{u1};
  std::vector<std::pair<std::string, Polynomial>> diffs;
  for (long j = 0; j <= n; ++j) {
    Generator g = tensor_t_beta(n, j);
    gens.push_back(g);
    Rational coef = int_rat(-binomial(n + 1, j) * ipow(d - 1, j));
    diffs.emplace_back(g.name, gp(u1).pow(static_cast<int>(n - j + 1)) * coef);
  }
  return make_cdga(std::move(gens), std::move(diffs));
}

CDGA sections_borel(long n, long d, DegreeWindow w) {
  require(n >= 2, "sections_borel: n must be at least 2");
  w.validate();
  Generator u1 = tensor_u1();

  std::vector<Generator> gens;
  for (long q = 1; q <= n + 1; ++q) gens.push_back(chern_generator(q));
  gens.push_back(u1);

  std::vector<std::pair<std::string, Polynomial>> diffs;
  for (long k = 0; k <= n; ++k) {
    Generator g = tensor_t_beta(n, k);
    gens.push_back(g);

    Polynomial dk;
    for (long q = 0; q <= n; ++q) {
      Int outer = binomial(n - q + 1, k);
      if (outer == 0) continue;
      Int inner = 0;
      for (long j = 0; j <= std::min(n - q, k); ++j)
        inner += Int(parity_sign(j + 1)) * binomial(k, j) * ipow(d, k - j);
      Rational coef = int_rat(Int(parity_sign(n)) * Int(parity_sign(q - 1)) * outer * inner);
      dk += cq_poly(q) * gp(u1).pow(static_cast<int>(n - q - k + 1)) * coef;
    }
    dk += cq_poly(n + 1 - k) * int_rat(ipow(1 - d, n + 1) - 1);
    diffs.emplace_back(g.name, std::move(dk));
  }
  return make_cdga(std::move(gens), std::move(diffs));
}

std::vector<Polynomial> explicit_pu_cocycles(long n, long d) {
  require(n >= 1, "explicit_pu_cocycles: n must be at least 1");
  require(d != 1, "explicit_pu_cocycles: d must differ from 1");
  Generator u1 = tensor_u1();
  Generator tn = tensor_t_beta(n, n);

  std::vector<Polynomial> out;
  for (long j = 0; j <= n - 1; ++j) {
    Rational coef = int_rat(binomial(n + 1, j) * ipow(d - 1, j)) /
                    int_rat(Int(n + 1) * ipow(d - 1, n));
    Polynomial x = gp(tensor_t_beta(n, j)) -
                   gp(u1).pow(static_cast<int>(n - j)) * gp(tn) * coef;
    out.push_back(std::move(x));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orbit map
// ---------------------------------------------------------------------------

CDGA orbit_target(long n) {
  require(n >= 1, "orbit_target: n must be at least 1");
  std::vector<Generator> gens;
  for (long q = 1; q <= n + 1; ++q) gens.push_back(desuspended_chern(q));
  return make_cdga(std::move(gens));
}

CDGA pu_reference_model(long n) {
  require(n >= 1, "pu_reference_model: n must be at least 1");
  std::vector<Generator> gens;
  for (long k = 1; k <= n; ++k)
    gens.push_back(Generator{indexed("x", 2 * k + 1), static_cast<int>(2 * k + 1)});
  return make_cdga(std::move(gens));
}

std::vector<Rational> orbit_coefficients(long n, long d) {
  std::vector<Rational> out;
  for (long k = 0; k <= n; ++k)
    out.push_back(int_rat(ipow(1 - d, n + 1) - ipow(1 - d, k)));
  return out;
}

bool orbit_lift_compatible(long n, long d, const std::vector<Rational>& lambda) {
  require(n >= 2, "orbit_lift_compatible: n must be at least 2");
  require(static_cast<long>(lambda.size()) == n + 1,
          "orbit_lift_compatible: expected n+1 coefficients");
  CDGA borel = sections_borel(n, d, DegreeWindow{0, static_cast<int>(2 * n + 2)});

  // A lift F of the orbit map into the acyclic extension by s^-1 c_q (with
  // d(s^-1 c_q) = c_q) must satisfy, per generator, that the single-base-
  // factor part of d(t(x)beta_k) is lambda_k * c_{n+1-k}: monomials with two
  // or more base factors are absorbed by correction terms and never
  // contribute a bare c.
  for (long k = 0; k <= n - 1; ++k) {
    Generator g = tensor_t_beta(n, k);
    Rational coef =
        borel.differential_of(g).coefficient(Monomial::of(chern_generator(n + 1 - k)));
    if (coef != lambda[static_cast<std::size_t>(k)]) return false;
  }

  // For k = n the bare c_1 also receives a correction through the image of
  // u(x)1 in degree 2; that correction is a free parameter whenever the
  // linear u(x)1 coefficient of d(t(x)beta_n) is nonzero.
  Generator gn = tensor_t_beta(n, n);
  const Polynomial& dn = borel.differential_of(gn);
  Rational linear_u = dn.coefficient(Monomial::of(tensor_u1()));
  if (linear_u == 0) {
    Rational coef = dn.coefficient(Monomial::of(chern_generator(1)));
    if (coef != lambda[static_cast<std::size_t>(n)]) return false;
  }
  return true;
}

Morphism orbit_map(long n, long d) {
  require(n >= 1, "orbit_map: n must be at least 1");
  CDGA source = sections_closed_form(n, d);
  CDGA target = orbit_target(n);
  std::vector<Rational> lambda = orbit_coefficients(n, d);

  Morphism psi(source, std::move(target));
  psi.set_image(tensor_u1(), Polynomial::zero());
  for (long k = 0; k <= n; ++k)
    psi.set_image(tensor_t_beta(n, k),
                  Polynomial::term(Monomial::of(desuspended_chern(n + 1 - k)),
                                   lambda[static_cast<std::size_t>(k)]));

  auto chain = psi.check_chain_map();
  if (!chain.ok) throw std::logic_error("orbit_map: stated images fail the chain condition");
  if (n >= 2 && !orbit_lift_compatible(n, d, lambda))
    throw std::logic_error("orbit_map: stated coefficients fail Borel compatibility");
  return psi;
}

OrbitDecision orbit_iso_decision(long n, long d) {
  require(n >= 1, "orbit_iso_decision: n must be at least 1");
  DegreeWindow window{0, static_cast<int>(2 * n + 2)};

  // Route 1: closed form.  The map hits the projective-unitary part of the
  // target exactly when every coefficient lambda_1..lambda_n is nonzero.
  std::vector<Rational> lambda = orbit_coefficients(n, d);
  bool route1 = true;
  for (long k = 1; k <= n; ++k)
    if (lambda[static_cast<std::size_t>(k)] == 0) route1 = false;

  // Route 2: induced ranks degree by degree.
  Morphism psi = orbit_map(n, d);
  CdgaComplex source(psi.source());
  CdgaComplex target(psi.target());
  QuasiIsoReport rep = is_quasi_iso(
      source, target,
      [&psi](const Monomial& m) { return psi.apply(Polynomial::term(m, Rational(1))); },
      window);

  std::map<int, long> pu = betti_numbers(CdgaComplex(pu_reference_model(n)), window);

  OrbitDecision out;
  bool route2 = true;
  for (const auto& deg : rep.degrees) {
    bool injective = deg.induced_rank == deg.dim_h_source;
    if (!injective && deg.degree >= 1) out.kernelDegrees.push_back(deg.degree);
    if (!injective || deg.dim_h_source != pu[deg.degree]) route2 = false;
  }
  if (route1 != route2)
    throw std::logic_error("orbit_iso_decision: closed-form and rank routes disagree");
  out.iso = route1;
  out.diagnostics = std::move(rep);
  return out;
}

Int h1_torsion_order(long n, long d) {
  require(n >= 1, "h1_torsion_order: n must be at least 1");
  if (d < 1)
    throw std::domain_error("h1_torsion_order: defined for d >= 1 only");
  return Int(n + 1) * ipow(d - 1, n);
}

Int characteristic_of_degree(long n, long d) {
  require(n >= 1, "characteristic_of_degree: n must be at least 1");
  Int sum = 0;
  for (long k = 2; k <= n + 1; ++k) sum += binomial(n + 1, k) * ipow(d, k - 1);
  return Int(parity_sign(n - 1)) * sum;
}

// ---------------------------------------------------------------------------
// The real two-plane family
// ---------------------------------------------------------------------------

std::string to_string(Gr2DzSign sign) {
  return sign == Gr2DzSign::kMinus ? "minus" : "plus";
}

Gr2DzSign gr2_dz_sign_from_string(const std::string& text) {
  if (text == "minus") return Gr2DzSign::kMinus;
  if (text == "plus") return Gr2DzSign::kPlus;
  throw std::invalid_argument("unknown d(z) sign '" + text + "' (expected minus or plus)");
}

namespace {

std::vector<Polynomial> default_base_pontryagin(long n) {
  std::vector<Polynomial> out;
  for (long i = 0; i <= n - 1; ++i)
    out.push_back(Polynomial::term(Monomial::of(kB, static_cast<int>(2 * i)),
                                   int_rat(binomial(n + 1, i))));
  return out;
}

void validate_base_pontryagin(long n, const std::vector<Polynomial>& P) {
  require(static_cast<long>(P.size()) == n,
          "gr2_models: expected n Pontryagin polynomials P_0..P_{n-1}");
  for (long i = 0; i <= n - 1; ++i) {
    for (const auto& [m, c] : P[static_cast<std::size_t>(i)].terms()) {
      require(m.degree() == 4 * i,
              "gr2_models: P_" + std::to_string(i) + " must be homogeneous of degree " +
                  std::to_string(4 * i));
      for (const auto& [g, e] : m.factors())
        require(g == kB, "gr2_models: Pontryagin polynomials must lie in the subalgebra on b");
    }
  }
}

}  // namespace

Gr2Models gr2_models(long n, Gr2DzSign dz,
                     const std::optional<std::vector<Polynomial>>& pontryagin) {
  require(n >= 2, "gr2_models: n must be at least 2");
  std::vector<Polynomial> P = pontryagin ? *pontryagin : default_base_pontryagin(n);
  validate_base_pontryagin(n, P);
  const Rational dz_sign(dz == Gr2DzSign::kMinus ? 1 : -1);

  // --- Borel model of the Grassmannian over BSO(2n). ---
  Generator euler{indexed("e", 2 * n), static_cast<int>(2 * n)};
  Generator ehat{"ehat_2", 2};
  Generator ebar{indexed("ebar", 2 * n - 2), static_cast<int>(2 * n - 2)};
  Generator sp{"s^-1 p_" + std::to_string(4 * n - 4), static_cast<int>(4 * n - 5)};
  Generator se{"s^-1 e_" + std::to_string(2 * n), static_cast<int>(2 * n - 1)};
  auto pontryagin_gen = [](long i) {
    return Generator{indexed("p", 4 * i), static_cast<int>(4 * i)};
  };

  CDGA bso = bso_model(n);
  Polynomial dsp = gp(ebar).pow(2);
  for (long j = 0; j <= n - 1; ++j) {
    Polynomial pterm =
        (n - 1 - j == 0) ? Polynomial::one() : gp(pontryagin_gen(n - 1 - j));
    dsp -= gp(ehat).pow(static_cast<int>(2 * j)) * pterm * Rational(parity_sign(j));
  }
  Polynomial dse = gp(ehat) * gp(ebar) - gp(euler);

  std::vector<Generator> total_gens;
  for (const auto& g : bso.generators()) total_gens.push_back(g);
  total_gens.insert(total_gens.end(), {ehat, ebar, sp, se});
  CDGA borel_total =
      make_cdga(total_gens, {{sp.name, std::move(dsp)}, {se.name, std::move(dse)}});
  RelativeModel borel{bso, {ehat, ebar, sp, se}, std::move(borel_total), {}};
  borel.validate();

  // --- Restriction to the product of the two smaller classifying spaces. ---
  std::vector<Generator> iota_gens{ehat, ebar};
  auto pbar_gen = [](long i) {
    return Generator{indexed("pbar", 4 * i), static_cast<int>(4 * i)};
  };
  for (long i = 1; i <= n - 2; ++i) iota_gens.push_back(pbar_gen(i));
  CDGA iota_target = make_cdga(iota_gens);
  auto pbar_poly = [&](long i) {
    return i == 0 ? Polynomial::one() : gp(pbar_gen(i));
  };
  Morphism iota(bso, std::move(iota_target));
  for (long i = 1; i <= n - 2; ++i)
    iota.set_image(pontryagin_gen(i), pbar_poly(i) + pbar_poly(i - 1) * gp(ehat).pow(2));
  iota.set_image(pontryagin_gen(n - 1),
                 gp(ebar).pow(2) + pbar_poly(n - 2) * gp(ehat).pow(2));
  iota.set_image(euler, gp(ebar) * gp(ehat));

  // --- Minimal Thom model. ---
  Generator mu{"u", 2};
  Generator omega_f{"omega_f", static_cast<int>(2 * n)};
  Generator omega_x{"omega_x", static_cast<int>(2 * n + 1)};
  Generator omega_fx{"omega_fx", static_cast<int>(4 * n - 1)};
  Generator mz{"z", static_cast<int>(4 * n - 1)};
  Generator mv{"v", static_cast<int>(4 * n)};
  Generator mt{"t", static_cast<int>(4 * n + 1)};

  Polynomial dz_min = gp(omega_f).pow(2) -
                      gp(mu).pow(static_cast<int>(2 * n)) *
                          (dz_sign * Rational(parity_sign(n - 1)));
  CDGA thom_minimal = make_cdga(
      {mu, omega_f, omega_x, omega_fx, mz, mv, mt},
      {{"omega_x", gp(mu) * gp(omega_f)},
       {"omega_fx", gp(omega_f).pow(2)},
       {"z", dz_min},
       {"v", gp(omega_f) * gp(omega_x) - gp(mu) * gp(omega_fx)},
       {"t", gp(mu) * dz_min}});

  // --- Ideal-based Thom model: ambient algebra and Euler generator. ---
  Generator ae{"e", 2};
  Generator af{"f", static_cast<int>(2 * n - 2)};
  Generator ax{"x", static_cast<int>(2 * n - 1)};
  Generator ay{"y", static_cast<int>(4 * n - 5)};
  CDGA ambient = make_cdga(
      {ae, af, ax, ay},
      {{"x", gp(ae) * gp(af)},
       {"y", gp(af).pow(2) -
                 gp(ae).pow(static_cast<int>(2 * n - 2)) * Rational(parity_sign(n - 1))}});

  Morphism phi(thom_minimal, ambient);
  phi.set_image(mu, gp(ae));
  phi.set_image(omega_f, gp(ae) * gp(af));
  phi.set_image(omega_x, gp(ae) * gp(ax));
  phi.set_image(omega_fx, gp(ae) * gp(af) * gp(ax));
  phi.set_image(mz, gp(ae).pow(2) * gp(ay));
  phi.set_image(mv, Polynomial::zero());
  phi.set_image(mt, gp(ae).pow(3) * gp(ay));

  // --- The same family over the CP^n model. ---
  Generator cy = y_generator(n);  // collides with no fibre name
  Polynomial euler_term = gp(kU) * gp(kB).pow(static_cast<int>(n)) * Rational(n + 1);
  Polynomial dz_rel = gp(omega_f).pow(2);
  for (long j = 0; j <= n - 1; ++j)
    dz_rel -= P[static_cast<std::size_t>(n - 1 - j)] *
              gp(kU).pow(static_cast<int>(2 * j + 2)) * (dz_sign * Rational(parity_sign(j)));
  CDGA over_total = make_cdga(
      {kB, cy, kU, omega_f, omega_x, omega_fx, mz, mv, mt},
      {{"y", gp(kB).pow(static_cast<int>(n + 1))},
       {"omega_x", gp(kU) * gp(omega_f) - euler_term},
       {"omega_fx", gp(omega_f).pow(2) - gp(kB).pow(static_cast<int>(n)) * gp(omega_f) *
                                             Rational(n + 1)},
       {"z", dz_rel},
       {"v", gp(omega_f) * gp(omega_x) - gp(kU) * gp(omega_fx)},
       {"t", gp(kU) * dz_rel}});
  RelativeModel over{cpn_model(n), {kU, omega_f, omega_x, omega_fx, mz, mv, mt},
                     std::move(over_total), {}};
  over.validate();

  return Gr2Models{std::move(borel), std::move(iota),     std::move(thom_minimal),
                   std::move(ambient), ae, std::move(phi), std::move(over)};
}

SectionInput smooth_sections_input(long n, Gr2DzSign dz) {
  require(n >= 2, "smooth_sections_input: n must be at least 2");
  Gr2Models models = gr2_models(n, dz);
  DegreeWindow window{0, static_cast<int>(4 * n + 2)};
  Coalgebra coalgebra(cpn_model(n), window);
  return SectionInput{std::move(models.overCPn), std::move(coalgebra), window};
}

SectionModel smooth_sections_model(long n, Gr2DzSign dz) {
  SectionInput in = smooth_sections_input(n, dz);
  return brown_szczarba(in.model, in.coalgebra, in.window, SignConvention::kSection3);
}

// ---------------------------------------------------------------------------
// Evaluation cochains
// ---------------------------------------------------------------------------

EtaClasses eta_classes(long n, long d) {
  require(n >= 1, "eta_classes: n must be at least 1");
  require(d != 1, "eta_classes: d must differ from 1");

  SectionInput in = sections_bs_input(n);
  SectionModel S =
      brown_szczarba(in.model, in.coalgebra, in.window, SignConvention::kSection4);
  Morphism ev = evaluation_map_model(S, in.model, in.coalgebra);

  Polynomial ev_u = ev.image_of(kU);
  Polynomial ev_t = ev.image_of(t_generator(n));

  EtaClasses out;
  out.eta_u = -pushforward_p_beta(ev_u, 0, in.coalgebra);
  out.kappa_u = gp(tensor_u1());
  for (long j = 0; j <= n; ++j)
    out.eta_t.push_back(pushforward_p_beta(ev_t, static_cast<int>(j), in.coalgebra) *
                        Rational(parity_sign(j + 1)));
  for (long j = 0; j <= n - 1; ++j) {
    Rational coef = int_rat(binomial(n + 1, j) * ipow(d - 1, j)) / int_rat(ipow(d - 1, n));
    out.eta_odd.push_back(out.eta_t[static_cast<std::size_t>(j)] * Rational(n + 1) -
                          out.kappa_u.pow(static_cast<int>(n - j)) *
                              out.eta_t[static_cast<std::size_t>(n)] * coef);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Combinatorial identities
// ---------------------------------------------------------------------------

IdentityCheckReport combinatorial_identities_check(long n_max) {
  require(n_max >= 0 && n_max <= 64,
          "combinatorial_identities_check: n_max must lie in [0, 64]");
  IdentityCheckReport report;
  for (long n = 0; n <= n_max; ++n) {
    for (long k = 0; k <= n; ++k) {
      for (long j = 0; j <= n - k; ++j) {
        if (binomial(n, k) * binomial(n - k, j) != binomial(n, k + j) * binomial(k + j, j)) {
          report.ok = false;
          report.failures.push_back("product identity fails at n=" + std::to_string(n) +
                                    ", k=" + std::to_string(k) + ", j=" + std::to_string(j));
        }
      }
    }
  }
  for (long p = 1; p <= n_max; ++p) {
    Int sum = 0;
    for (long i = 0; i <= p; ++i) sum += Int(parity_sign(i)) * binomial(p, i);
    if (sum != 0) {
      report.ok = false;
      report.failures.push_back("alternating sum fails at p=" + std::to_string(p));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Invariant report
// ---------------------------------------------------------------------------

InvariantReport invariant_report(long n, long d) {
  require(n >= 1, "invariant_report: n must be at least 1");
  InvariantReport out;
  out.n = n;
  out.d = d;
  Int torsion = Int(n + 1) * ipow(d - 1, n);
  out.h1TorsionOrder = torsion < 0 ? Int(-torsion) : torsion;
  DegreeWindow window{0, static_cast<int>(n * (n + 2))};
  out.betti = betti_table(CdgaComplex(sections_closed_form(n, d)), window);
  OrbitDecision orbit = orbit_iso_decision(n, d);
  out.orbitIso = orbit.iso;
  out.orbitKernelDegrees = std::move(orbit.kernelDegrees);
  out.characteristic = characteristic_of_degree(n, d);
  return out;
}

// ---------------------------------------------------------------------------
// String-keyed lookup
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::pair<CatalogFamily, std::string>>& family_names() {
  static const std::vector<std::pair<CatalogFamily, std::string>> table = {
      {CatalogFamily::kBU, "bu"},
      {CatalogFamily::kBSO, "bso"},
      {CatalogFamily::kCPn, "cpn"},
      {CatalogFamily::kGr1cAbs, "gr1c-abs"},
      {CatalogFamily::kGr1cBorel, "gr1c-borel"},
      {CatalogFamily::kThomRel, "thom-rel"},
      {CatalogFamily::kThomBorel, "thom-borel"},
      {CatalogFamily::kSections, "sections"},
      {CatalogFamily::kSectionsBorel, "sections-borel"},
      {CatalogFamily::kOrbitTarget, "orbit-target"},
      {CatalogFamily::kGr2Borel, "gr2-borel"},
      {CatalogFamily::kGr2ThomMinimal, "gr2-thom-minimal"},
      {CatalogFamily::kGr2ThomIdeal, "gr2-thom-ideal"},
      {CatalogFamily::kGr2OverCPn, "gr2-over-cpn"},
      {CatalogFamily::kGr2Sections, "gr2-sections"},
  };
  return table;
}

std::string family_name(CatalogFamily family) {
  for (const auto& [f, name] : family_names())
    if (f == family) return name;
  throw std::logic_error("unknown catalog family");
}

bool family_takes_d(CatalogFamily family) {
  return family == CatalogFamily::kSections || family == CatalogFamily::kSectionsBorel;
}

long parse_long(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("catalog key: cannot parse " + what + " from '" + text + "'");
  }
  if (used != text.size())
    throw std::invalid_argument("catalog key: trailing characters in " + what + " '" + text +
                                "'");
  return value;
}

}  // namespace

std::string CatalogKey::str() const {
  std::string out = family_name(family) + ":n=" + std::to_string(n);
  if (d) out += ",d=" + std::to_string(*d);
  return out;
}

CatalogKey CatalogKey::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("catalog key '" + text + "' lacks ':' (expected family:n=...)");
  std::string fam = text.substr(0, colon);
  CatalogKey key;
  bool found = false;
  for (const auto& [f, name] : family_names()) {
    if (name == fam) {
      key.family = f;
      found = true;
      break;
    }
  }
  if (!found) throw std::invalid_argument("unknown catalog family '" + fam + "'");

  std::string rest = text.substr(colon + 1);
  bool have_n = false;
  std::size_t pos = 0;
  while (pos < rest.size()) {
    auto comma = rest.find(',', pos);
    std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("catalog key item '" + item + "' lacks '='");
    std::string name = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    if (name == "n") {
      key.n = parse_long(value, "n");
      have_n = true;
    } else if (name == "d") {
      key.d = parse_long(value, "d");
    } else {
      throw std::invalid_argument("catalog key has unknown parameter '" + name + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (!have_n) throw std::invalid_argument("catalog key '" + text + "' lacks n=");
  if (key.d && !family_takes_d(key.family))
    throw std::invalid_argument("catalog family '" + fam + "' does not take d");
  if (!key.d && family_takes_d(key.family))
    throw std::invalid_argument("catalog family '" + fam + "' requires d");
  return key;
}

bool CatalogKey::operator<(const CatalogKey& other) const {
  if (family != other.family) return family < other.family;
  if (n != other.n) return n < other.n;
  return d < other.d;
}

std::vector<std::string> catalog_family_names() {
  std::vector<std::string> out;
  for (const auto& [f, name] : family_names()) out.push_back(name);
  return out;
}

CDGA catalog_model(const CatalogKey& key, Gr2DzSign dz) {
  switch (key.family) {
    case CatalogFamily::kBU:
      return bu_model(key.n);
    case CatalogFamily::kBSO:
      return bso_model(key.n);
    case CatalogFamily::kCPn:
      return cpn_model(key.n);
    case CatalogFamily::kGr1cAbs:
      return gr1c_models(key.n).absolute;
    case CatalogFamily::kGr1cBorel:
      return gr1c_models(key.n).borel.total;
    case CatalogFamily::kThomRel:
      return thom_complex_models(key.n).rel.total;
    case CatalogFamily::kThomBorel:
      return thom_complex_models(key.n).borel.total;
    case CatalogFamily::kSections:
      return sections_closed_form(key.n, *key.d);
    case CatalogFamily::kSectionsBorel:
      return sections_borel(key.n, *key.d,
                            DegreeWindow{0, static_cast<int>(2 * key.n + 2)});
    case CatalogFamily::kOrbitTarget:
      return orbit_target(key.n);
    case CatalogFamily::kGr2Borel:
      return gr2_models(key.n, dz).borel.total;
    case CatalogFamily::kGr2ThomMinimal:
      return gr2_models(key.n, dz).thomMinimal;
    case CatalogFamily::kGr2ThomIdeal:
      return gr2_models(key.n, dz).thomAmbient;
    case CatalogFamily::kGr2OverCPn:
      return gr2_models(key.n, dz).overCPn.total;
    case CatalogFamily::kGr2Sections:
      return solved_presentation(smooth_sections_model(key.n, dz));
  }
  throw std::logic_error("unknown catalog family");
}

CatalogCheck catalog_check(const CatalogKey& key, Gr2DzSign dz) {
  CatalogCheck out;
  CDGA model = catalog_model(key, dz);
  auto d2 = model.check_d_squared();
  out.d2_ok = d2.ok;
  for (const auto& [g, residue] : d2.failures)
    out.d2_failures.push_back("d^2(" + g.name + ") = " + residue.str());

  auto record_relative = [&out](const RelativeModel& model_rel) {
    try {
      model_rel.validate();
    } catch (const std::exception& e) {
      out.chain_ok = false;
      out.chain_failures.push_back(e.what());
    }
  };
  auto record_chain = [&out](const char* name, const Morphism& phi) {
    auto rep = phi.check_chain_map();
    if (!rep.ok) {
      out.chain_ok = false;
      for (const auto& [g, residue] : rep.failures)
        out.chain_failures.push_back(std::string(name) + " fails on " + g.name + ": " +
                                     residue.str());
    }
  };

  switch (key.family) {
    case CatalogFamily::kGr1cBorel:
      record_relative(gr1c_models(key.n).borel);
      break;
    case CatalogFamily::kThomRel:
      record_relative(thom_complex_models(key.n).rel);
      break;
    case CatalogFamily::kThomBorel:
      record_relative(thom_complex_models(key.n).borel);
      break;
    case CatalogFamily::kSections:
    case CatalogFamily::kSectionsBorel:
      try {
        orbit_map(key.n, *key.d);
      } catch (const std::exception& e) {
        out.chain_ok = false;
        out.chain_failures.push_back(e.what());
      }
      break;
    case CatalogFamily::kGr2Borel: {
      Gr2Models models = gr2_models(key.n, dz);
      record_relative(models.borel);
      record_chain("iota", models.iota);
      break;
    }
    case CatalogFamily::kGr2ThomMinimal:
    case CatalogFamily::kGr2ThomIdeal:
      record_chain("phi", gr2_models(key.n, dz).phi);
      break;
    case CatalogFamily::kGr2OverCPn:
      record_relative(gr2_models(key.n, dz).overCPn);
      break;
    default:
      break;
  }
  return out;
}

}  // namespace rht
