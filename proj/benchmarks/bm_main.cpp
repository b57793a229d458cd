#include <benchmark/benchmark.h>

#include "rht/catalog.hpp"
#include "rht/homology.hpp"
#include "rht/linalg.hpp"
#include "rht/section.hpp"

namespace {

using namespace rht;

// Dense-ish polynomial product in a truncated algebra.
void BM_PolynomialMultiply(benchmark::State& state) {
  const long n = state.range(0);
  CDGA algebra = cpn_model(n);
  Generator b = *algebra.generator_by_name("b");
  Polynomial base = Polynomial::one() + Polynomial::generator(b);
  for (auto _ : state) {
    Polynomial p = algebra.power(base, static_cast<int>(n));
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_PolynomialMultiply)->Arg(4)->Arg(8)->Arg(16);

// Full Brown-Szczarba construction for the section-space family.
void BM_BrownSzczarba(benchmark::State& state) {
  const long n = state.range(0);
  SectionInput in = sections_bs_input(n);
  for (auto _ : state) {
    SectionModel model =
        brown_szczarba(in.model, in.coalgebra, in.window, SignConvention::kSection4);
    benchmark::DoNotOptimize(model.constraints.size());
  }
}
BENCHMARK(BM_BrownSzczarba)->Arg(2)->Arg(3);

// Betti numbers of a section-space component on [0, 2n+2].
void BM_ComponentBetti(benchmark::State& state) {
  const long n = state.range(0);
  CDGA component = sections_closed_form(n, 3);
  DegreeWindow window{0, static_cast<int>(2 * n + 2)};
  for (auto _ : state) {
    auto ranks = betti_numbers(CdgaComplex(component), window);
    benchmark::DoNotOptimize(ranks.size());
  }
}
BENCHMARK(BM_ComponentBetti)->Arg(2)->Arg(3);

// Fraction-free rank of the differential matrix in the middle degree.
void BM_DifferentialRank(benchmark::State& state) {
  const long n = state.range(0);
  CdgaComplex complex(sections_closed_form(n, 3));
  const int degree = static_cast<int>(n + 1);
  for (auto _ : state) {
    QMat matrix = differential_matrix(complex, degree);
    benchmark::DoNotOptimize(rank(matrix));
  }
}
BENCHMARK(BM_DifferentialRank)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
