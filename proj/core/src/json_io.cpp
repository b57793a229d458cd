#include "rht/json_io.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace rht {

namespace {

using nlohmann::json;  // plain json: object keys are kept sorted

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

int64_t int64_of(const Int& v, const char* what) { return checked_int64(v, what); }

json polynomial_to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    json factors = json::array();
    for (const auto& [g, e] : m.factors()) factors.push_back(json::array({g.name, e}));
    terms.push_back(json::array({int64_of(numerator(c), "json numerator"),
                                 int64_of(denominator(c), "json denominator"),
                                 std::move(factors)}));
  }
  return terms;
}

std::vector<Generator> sorted_generators(const CDGA& algebra) {
  std::vector<Generator> gens = algebra.generators();
  std::sort(gens.begin(), gens.end());
  return gens;
}

json generator_list_to_json(const std::vector<Generator>& gens) {
  json out = json::array();
  for (const auto& g : gens) out.push_back(json{{"name", g.name}, {"degree", g.degree}});
  return out;
}

json cdga_to_json_value(const CDGA& algebra) {
  json out;
  std::vector<Generator> gens = sorted_generators(algebra);
  out["generators"] = generator_list_to_json(gens);
  json diff = json::object();
  for (const auto& g : gens) {
    const Polynomial& dg = algebra.differential_of(g);
    if (!dg.is_zero()) diff[g.name] = polynomial_to_json(dg);
  }
  out["differential"] = std::move(diff);
  if (!algebra.truncations().empty()) {
    json trunc = json::object();
    for (const auto& [g, power] : algebra.truncations()) trunc[g.name] = power;
    out["truncation"] = std::move(trunc);
  }
  return out;
}

const json& expect(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw std::invalid_argument(std::string("model JSON lacks \"") + key + "\"");
  return *it;
}

std::vector<Generator> generator_list_from_json(const json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("\"generators\" must be an array");
  std::vector<Generator> gens;
  for (const auto& item : arr) {
    if (!item.is_object() || !item.contains("name") || !item.contains("degree"))
      throw std::invalid_argument("generator entries need \"name\" and \"degree\"");
    gens.push_back(Generator{item["name"].get<std::string>(), item["degree"].get<int>()});
  }
  return gens;
}

Polynomial polynomial_from_json(const json& terms,
                                const std::map<std::string, Generator>& by_name) {
  if (!terms.is_array()) throw std::invalid_argument("polynomial must be an array of terms");
  Polynomial out;
  for (const auto& term : terms) {
    if (!term.is_array() || term.size() != 3)
      throw std::invalid_argument("each term must be [num, den, factors]");
    int64_t num = term[0].get<int64_t>();
    int64_t den = term[1].get<int64_t>();
    if (den == 0) throw std::invalid_argument("zero denominator in term");
    std::vector<Monomial::Factor> factors;
    for (const auto& f : term[2]) {
      if (!f.is_array() || f.size() != 2)
        throw std::invalid_argument("each factor must be [genName, exp]");
      std::string name = f[0].get<std::string>();
      auto it = by_name.find(name);
      if (it == by_name.end())
        throw std::invalid_argument("term uses unknown generator '" + name + "'");
      factors.emplace_back(it->second, f[1].get<int>());
    }
    auto m = Monomial::from_factors(std::move(factors));
    if (!m) throw std::invalid_argument("term repeats an odd generator");
    // Divide rather than construct pairwise: input fractions need not be in
    // lowest terms or carry a positive denominator.
    out.add_term(*m, Rational(Int(num)) / Rational(Int(den)));
  }
  return out;
}

CDGA cdga_from_json_value(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("model JSON must be an object");
  std::vector<Generator> gens = generator_list_from_json(expect(j, "generators"));
  std::map<std::string, Generator> by_name;
  for (const auto& g : gens) {
    if (!by_name.emplace(g.name, g).second)
      throw std::invalid_argument("duplicate generator '" + g.name + "'");
  }

  std::vector<std::pair<std::string, Polynomial>> diffs;
  const json& diff = expect(j, "differential");
  if (!diff.is_object()) throw std::invalid_argument("\"differential\" must be an object");
  for (const auto& [name, terms] : diff.items()) {
    if (by_name.find(name) == by_name.end())
      throw std::invalid_argument("differential of unknown generator '" + name + "'");
    diffs.emplace_back(name, polynomial_from_json(terms, by_name));
  }

  std::vector<std::pair<std::string, int>> truncations;
  if (j.contains("truncation")) {
    const json& trunc = j["truncation"];
    if (!trunc.is_object()) throw std::invalid_argument("\"truncation\" must be an object");
    for (const auto& [name, power] : trunc.items()) {
      if (by_name.find(name) == by_name.end())
        throw std::invalid_argument("truncation of unknown generator '" + name + "'");
      truncations.emplace_back(name, power.get<int>());
    }
  }
  return make_cdga(std::move(gens), std::move(diffs), std::move(truncations));
}

json ranks_to_json(const std::map<int, long>& ranks) {
  json out = json::object();
  for (const auto& [degree, rank] : ranks)
    if (rank != 0) out[std::to_string(degree)] = rank;
  return out;
}

}  // namespace

std::string cdga_to_json(const CDGA& algebra) {
  return dump_canonical(cdga_to_json_value(algebra));
}

CDGA cdga_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw std::invalid_argument("model JSON does not parse");
  return cdga_from_json_value(j);
}

std::string betti_table_to_json(const BettiTable& table) {
  json out;
  out["window"] = json::array({table.window.lo, table.window.hi});
  out["ranks"] = ranks_to_json(table.ranks);
  return dump_canonical(out);
}

BettiTable betti_table_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object())
    throw std::invalid_argument("Betti table JSON does not parse");
  const json& window = expect(j, "window");
  if (!window.is_array() || window.size() != 2)
    throw std::invalid_argument("\"window\" must be [lo, hi]");
  BettiTable out;
  out.window = DegreeWindow{window[0].get<int>(), window[1].get<int>()};
  const json& ranks = expect(j, "ranks");
  if (!ranks.is_object()) throw std::invalid_argument("\"ranks\" must be an object");
  for (const auto& [degree, rank] : ranks.items())
    out.ranks[std::stoi(degree)] = rank.get<long>();
  return out;
}

std::string section_model_to_json(const SectionModel& model) {
  json out = cdga_to_json_value(model.algebra);

  json constraints = json::array();
  for (const auto& c : model.constraints)
    constraints.push_back(json{{"fromGenerator", c.from_generator},
                               {"relation", polynomial_to_json(c.relation)}});
  out["constraints"] = std::move(constraints);

  json provenance;
  provenance["base"] = cdga_to_json_value(model.base);
  std::vector<Generator> fiber = model.fiber;
  std::sort(fiber.begin(), fiber.end());
  provenance["fiber"] = generator_list_to_json(fiber);
  provenance["window"] = json::array({model.window.lo, model.window.hi});
  provenance["signConvention"] = to_string(model.convention);
  out["provenance"] = std::move(provenance);
  return dump_canonical(out);
}

SectionModel section_model_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object())
    throw std::invalid_argument("section-model JSON does not parse");
  SectionModel out;
  out.algebra = cdga_from_json_value(j);

  std::map<std::string, Generator> by_name;
  for (const auto& g : out.algebra.generators()) by_name.emplace(g.name, g);

  const json& constraints = expect(j, "constraints");
  if (!constraints.is_array()) throw std::invalid_argument("\"constraints\" must be an array");
  for (const auto& c : constraints) {
    if (!c.is_object() || !c.contains("fromGenerator") || !c.contains("relation"))
      throw std::invalid_argument("constraints need \"fromGenerator\" and \"relation\"");
    out.constraints.push_back(Constraint{c["fromGenerator"].get<std::string>(),
                                         polynomial_from_json(c["relation"], by_name)});
  }

  const json& provenance = expect(j, "provenance");
  out.base = cdga_from_json_value(expect(provenance, "base"));
  out.fiber = generator_list_from_json(expect(provenance, "fiber"));
  const json& window = expect(provenance, "window");
  if (!window.is_array() || window.size() != 2)
    throw std::invalid_argument("provenance \"window\" must be [lo, hi]");
  out.window = DegreeWindow{window[0].get<int>(), window[1].get<int>()};
  auto convention =
      sign_convention_from_string(expect(provenance, "signConvention").get<std::string>());
  if (!convention) throw std::invalid_argument("unknown signConvention");
  out.convention = *convention;
  return out;
}

std::string invariant_report_to_json(const InvariantReport& report) {
  json out;
  out["n"] = report.n;
  out["d"] = report.d;
  out["h1TorsionOrder"] = int64_of(report.h1TorsionOrder, "h1TorsionOrder");
  out["orbitIso"] = report.orbitIso;
  out["orbitKernelDegrees"] = report.orbitKernelDegrees;
  out["characteristic"] = int64_of(report.characteristic, "characteristic");
  out["betti"] = ranks_to_json(report.betti.ranks);
  return dump_canonical(out);
}

}  // namespace rht
