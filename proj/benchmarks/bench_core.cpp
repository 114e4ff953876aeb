#include <benchmark/benchmark.h>

#include "vcdlab/definability.hpp"
#include "vcdlab/gallery.hpp"
#include "vcdlab/symmetry.hpp"
#include "vcdlab/typespace.hpp"

using namespace vcdlab;

static void BM_WidthGrid(benchmark::State& state) {
  const GridOrder g = make_grid_order({static_cast<int>(state.range(0)), 3});
  for (auto _ : state) {
    int w = width(g.poset);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_WidthGrid)->Arg(1)->Arg(2)->Arg(4);

static void BM_AutomorphismsHypercube(benchmark::State& state) {
  const HypercubePoset h = make_hypercube_poset({static_cast<int>(state.range(0))});
  for (auto _ : state) {
    auto gens = automorphism_generators(h.poset.structure(), {});
    benchmark::DoNotOptimize(gens);
  }
}
BENCHMARK(BM_AutomorphismsHypercube)->Arg(1)->Arg(2)->Arg(3);

static void BM_EnumerateTypesGrid(benchmark::State& state) {
  const GridOrder g = make_grid_order({static_cast<int>(state.range(0)), 3});
  const FiniteStructure& s = g.poset.structure();
  const FormulaSet delta = make_formula_set(
      {Formula::atom("<", {Term::variable("y"), Term::variable("x")})});
  const ParamSet B = ParamSet::from_elements(g.B);
  for (auto _ : state) {
    auto traces = enumerate_types(s, delta, B);
    benchmark::DoNotOptimize(traces);
  }
}
BENCHMARK(BM_EnumerateTypesGrid)->Arg(2)->Arg(4);

static void BM_DefTuplesHypercube(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const HypercubePoset h = make_hypercube_poset({d});
  const FiniteStructure& s = h.poset.structure();
  const FormulaSet delta = make_formula_set(
      {Formula::atom("<", {Term::variable("x"), Term::variable("y")})});
  const ParamSet B = ParamSet::from_elements(h.hyperplanes);
  const int elem[1] = {h.point_count() - 1};
  const TypeTrace t = realize_type(s, delta, elem, B);
  for (auto _ : state) {
    DefinabilityContext ctx(s, delta, B);
    auto def = ctx.def_tuples(t, d);
    benchmark::DoNotOptimize(def);
  }
}
BENCHMARK(BM_DefTuplesHypercube)->Arg(1)->Arg(2);

BENCHMARK_MAIN();
