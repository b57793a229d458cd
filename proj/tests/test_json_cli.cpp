#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rht/catalog.hpp"
#include "rht/homology.hpp"
#include "rht/json_io.hpp"
#include "rht/section.hpp"

using namespace rht;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

// Run the installed CLI with the given arguments, capturing stdout+stderr.
// RHT_CACHE_DIR is cleared unless the caller supplies an env prefix.
CliResult run_cli(const std::string& args, const std::string& env_prefix = "RHT_CACHE_DIR=") {
  const char* path = std::getenv("RHT_CLI_PATH");
  REQUIRE_MESSAGE(path != nullptr, "RHT_CLI_PATH must point at the CLI binary");
  std::string cmd = env_prefix + " " + std::string(path) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, got);
  int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), ("cannot open " + path).c_str());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

SectionModel reference_section_model() {
  SectionInput in = sections_bs_input(2);
  return brown_szczarba(in.model, in.coalgebra, in.window, SignConvention::kSection4);
}

}  // namespace

TEST_CASE("model JSON round-trips canonically") {
  SUBCASE("free algebra with differential") {
    CDGA model = sections_closed_form(2, 3);
    std::string text = cdga_to_json(model);
    CDGA parsed = cdga_from_json(text);
    CHECK(cdga_to_json(parsed) == text);

    // The parsed copy carries the same differentials.
    for (const auto& g : model.generators())
      CHECK(parsed.differential_of(g) == model.differential_of(g));

    // Canonical form: zero differentials and empty truncation are omitted.
    nlohmann::json doc = nlohmann::json::parse(text);
    CHECK(!doc["differential"].contains("u(x)1"));
    CHECK(doc["differential"].contains("t(x)1"));
    CHECK(!doc.contains("truncation"));
    CHECK(text.back() == '\n');
  }

  SUBCASE("truncations survive the round trip") {
    CDGA truncated = make_cdga({Generator{"b", 2}}, {}, {{"b", 2}});
    std::string text = cdga_to_json(truncated);
    nlohmann::json doc = nlohmann::json::parse(text);
    CHECK(doc["truncation"]["b"] == 2);
    CDGA parsed = cdga_from_json(text);
    CHECK(cdga_to_json(parsed) == text);
    CHECK(parsed.truncation_of(Generator{"b", 2}) == 2);
  }

  SUBCASE("input fractions need not be canonical") {
    CDGA parsed = cdga_from_json(
        R"({"generators": [{"name": "a", "degree": 1}, {"name": "w", "degree": 2}],
            "differential": {"a": [[2, -4, [["w", 1]]]]}})");
    CHECK(parsed.differential_of(Generator{"a", 1}) ==
          Polynomial::generator(Generator{"w", 2}) * Rational(-1, 2));
  }

  SUBCASE("malformed documents are rejected") {
    CHECK_THROWS_AS(cdga_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(cdga_from_json("{}"), std::invalid_argument);
    CHECK_THROWS_AS(cdga_from_json("[1, 2]"), std::invalid_argument);
    // Differential of a generator that was never declared.
    CHECK_THROWS_AS(
        cdga_from_json(R"({"generators": [{"name": "a", "degree": 1}],
                           "differential": {"q": []}})"),
        std::invalid_argument);
    // Zero denominator.
    CHECK_THROWS_AS(
        cdga_from_json(R"({"generators": [{"name": "a", "degree": 1}],
                           "differential": {"a": [[1, 0, []]]}})"),
        std::invalid_argument);
    // A term that repeats an odd generator.
    CHECK_THROWS_AS(
        cdga_from_json(R"({"generators": [{"name": "a", "degree": 1},
                                          {"name": "w", "degree": 2}],
                           "differential": {"w": [[1, 1, [["a", 2]]]]}})"),
        std::invalid_argument);
  }

  SUBCASE("coefficients beyond 64 bits refuse to serialize") {
    Generator a{"a", 1}, w{"w", 2};
    Rational huge{int_pow(Int(2), 70)};
    CDGA model = make_cdga({a, w}, {{"a", Polynomial::generator(w) * huge}});
    CHECK_THROWS_AS(cdga_to_json(model), std::overflow_error);
  }
}

TEST_CASE("Betti table JSON round-trips with sparse ranks") {
  BettiTable table =
      betti_table(CdgaComplex(sections_closed_form(2, 3)), DegreeWindow{0, 8});
  std::string text = betti_table_to_json(table);
  BettiTable parsed = betti_table_from_json(text);
  CHECK(betti_table_to_json(parsed) == text);
  CHECK(parsed.window.lo == 0);
  CHECK(parsed.window.hi == 8);

  nlohmann::json doc = nlohmann::json::parse(text);
  CHECK(doc["window"] == nlohmann::json::array({0, 8}));
  CHECK(doc["ranks"] ==
        nlohmann::json({{"0", 1}, {"3", 1}, {"5", 1}, {"8", 1}}));

  CHECK_THROWS_AS(betti_table_from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(betti_table_from_json("nonsense"), std::invalid_argument);
}

TEST_CASE("section-model JSON carries constraints and provenance") {
  SectionModel model = reference_section_model();
  std::string text = section_model_to_json(model);
  SectionModel parsed = section_model_from_json(text);
  CHECK(section_model_to_json(parsed) == text);
  CHECK(parsed.convention == SignConvention::kSection4);
  CHECK(parsed.window.lo == model.window.lo);
  CHECK(parsed.window.hi == model.window.hi);
  CHECK(parsed.constraints.size() == model.constraints.size());
  CHECK(cdga_to_json(parsed.base) == cdga_to_json(model.base));

  nlohmann::json doc = nlohmann::json::parse(text);
  CHECK(doc["provenance"]["signConvention"] == "section-4");
  CHECK(doc["provenance"]["window"] == nlohmann::json::array({0, 6}));

  // An unknown convention tag is rejected.
  std::string broken = text;
  broken.replace(broken.find("section-4"), 9, "section-5");
  CHECK_THROWS_AS(section_model_from_json(broken), std::invalid_argument);
}

TEST_CASE("golden catalog models match the frozen serializations") {
  const std::vector<std::string> keys{
      "bu:n=2",           "bso:n=2",
      "cpn:n=2",          "gr1c-abs:n=2",
      "gr1c-borel:n=2",   "thom-rel:n=2",
      "thom-borel:n=2",   "sections:n=2,d=3",
      "sections-borel:n=2,d=3", "orbit-target:n=2",
      "gr2-borel:n=2",    "gr2-thom-minimal:n=2",
      "gr2-thom-ideal:n=2", "gr2-over-cpn:n=2",
      "gr2-sections:n=2",
  };
  for (const auto& key : keys) {
    CAPTURE(key);
    std::string frozen = slurp(std::string(RHT_GOLDEN_DIR) + "/" + key + ".json");
    CHECK(cdga_to_json(catalog_model(CatalogKey::parse(key))) == frozen);
  }
}

TEST_CASE("CLI emits models and reports") {
  SUBCASE("model --format json matches the library serialization") {
    CliResult r = run_cli("model --model sections:n=2,d=3 --format json");
    CHECK(r.code == 0);
    CHECK(r.out == cdga_to_json(sections_closed_form(2, 3)));
  }

  SUBCASE("unknown catalog key is a usage error") {
    CliResult r = run_cli("model --model nope:n=1");
    CHECK(r.code == 1);
    CHECK(contains(r.out, "error:"));
  }

  SUBCASE("malformed window is a usage error") {
    CliResult r = run_cli("cohomology --model cpn:n=2 --window 0-8");
    CHECK(r.code == 1);
    CHECK(contains(r.out, "error:"));
  }

  SUBCASE("check reports clean models and failing comparisons") {
    CliResult ok = run_cli("check --model gr1c-borel:n=2");
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "d²=0: ok; chain maps: ok"));

    CliResult bad = run_cli("check --model gr2-thom-minimal:n=2 --gr2-dz-sign plus");
    CHECK(bad.code == 2);
    CHECK(contains(bad.out, "chain maps: FAIL"));
  }

  SUBCASE("cohomology agrees with the library Betti table") {
    CliResult r = run_cli("cohomology --model sections:n=2,d=3 --window 0:8 --format json");
    CHECK(r.code == 0);
    BettiTable table =
        betti_table(CdgaComplex(sections_closed_form(2, 3)), DegreeWindow{0, 8});
    CHECK(r.out == betti_table_to_json(table));
  }

  SUBCASE("sections emits the full model or one component") {
    CliResult full = run_cli("sections --n 2 --format json");
    CHECK(full.code == 0);
    CHECK(full.out == section_model_to_json(reference_section_model()));

    CliResult component = run_cli("sections --n 2 --d 3 --format json");
    CHECK(component.code == 0);
    CHECK(component.out == cdga_to_json(sections_closed_form(2, 3)));
  }

  SUBCASE("orbit text and JSON output") {
    CliResult trivial = run_cli("orbit --n 2 --d 1 --format text");
    CHECK(trivial.code == 0);
    CHECK(contains(trivial.out, "orbit map is trivial on rational cohomology (d=1)"));

    CliResult r = run_cli("orbit --n 2 --d 3 --format json");
    CHECK(r.code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc["iso"] == true);
    CHECK(doc["trivial"] == false);
    CHECK(doc["kernelDegrees"].empty());
    CHECK(doc["coefficients"] == nlohmann::json::array({"-9", "-6", "-12"}));
  }

  SUBCASE("invariants JSON carries the full report") {
    CliResult r = run_cli("invariants --n 2 --d 3 --format json");
    CHECK(r.code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc["n"] == 2);
    CHECK(doc["d"] == 3);
    CHECK(doc["h1TorsionOrder"] == 12);
    CHECK(doc["orbitIso"] == true);
    CHECK(doc["orbitKernelDegrees"].empty());
    CHECK(doc["characteristic"] == -18);
    CHECK(doc["betti"] ==
          nlohmann::json({{"0", 1}, {"3", 1}, {"5", 1}, {"8", 1}}));
  }
}

TEST_CASE("CLI model cache is write-through and read-back") {
  char tmpl[] = "/tmp/rht-cache-XXXXXX";
  char* dir = mkdtemp(tmpl);
  REQUIRE(dir != nullptr);
  std::string prefix = std::string("RHT_CACHE_DIR=") + dir;
  std::string cache_file = std::string(dir) + "/sections:n=2,d=3.json";

  CliResult first = run_cli("model --model sections:n=2,d=3 --format json", prefix);
  CHECK(first.code == 0);
  CHECK(slurp(cache_file) == first.out);

  CliResult second = run_cli("model --model sections:n=2,d=3 --format json", prefix);
  CHECK(second.code == 0);
  CHECK(second.out == first.out);

  // A hit returns the file bytes unchanged, so edits to the cache show up.
  {
    std::ofstream out(cache_file, std::ios::binary | std::ios::trunc);
    out << "{\"edited\": true}\n";
  }
  CliResult third = run_cli("model --model sections:n=2,d=3 --format json", prefix);
  CHECK(third.code == 0);
  CHECK(third.out == "{\"edited\": true}\n");
}

TEST_CASE("verification suite output is deterministic") {
  CliResult first = run_cli("verify-all --n-max 2");
  CliResult second = run_cli("verify-all --n-max 2");
  CHECK(first.out == second.out);
  CHECK(first.code == second.code);
  CHECK(first.code != 1);  // 0 or 2 (failed criteria), never a usage error
  CHECK(contains(first.out, "== verification suite =="));
  CHECK(contains(first.out, "/12 criteria pass =="));
}
