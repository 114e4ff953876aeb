#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "support/helpers.hpp"
#include "vcdlab/gallery.hpp"
#include "vcdlab/symmetry.hpp"
#include "vcdlab/typespace.hpp"

using namespace vcdlab;
using namespace vcdlab::testing;

namespace {

FormulaSet delta_y_less_x() {
  return make_formula_set({Formula::atom("<", {Term::variable("y"), Term::variable("x")})});
}

FormulaSet delta_x_less_y() {
  return make_formula_set({Formula::atom("<", {Term::variable("x"), Term::variable("y")})});
}

}  // namespace

TEST_CASE("the empty parameter set carries a unique empty trace") {
  PosetView chain = make_chain(3);
  const ParamSet empty = ParamSet::from_elements({});
  const int a[1] = {1};
  const TypeTrace t = realize_type(chain.structure(), delta_y_less_x(), a, empty);
  CHECK(t.b_size == 0);
  CHECK(t.positive.none());
  const auto traces = enumerate_types(chain.structure(), delta_y_less_x(), empty);
  CHECK(traces.size() == 1);
  CHECK(traces[0].realizers.size() == 3);
}

TEST_CASE("grid trace of a realizer matches the threshold rule") {
  const GridOrder g = make_grid_order({2, 3});
  const ParamSet B = ParamSet::from_elements(g.B);
  const int a[1] = {g.index(5, 0)};  // x_a - 2n = 1
  const TypeTrace t = realize_type(g.poset.structure(), delta_y_less_x(), a, B);
  std::set<int> expected{g.index(0, 1), g.index(0, 2), g.index(4, 0)};
  for (int j = 0; j < B.size(); ++j)
    CHECK(t.positive_at(0, j) == (expected.count(B[j][0]) > 0));
}

TEST_CASE("hypercube trace reads off the sign vector") {
  const HypercubePoset h = make_hypercube_poset({1});
  const ParamSet B = ParamSet::from_elements(h.hyperplanes);
  const int c[1] = {h.point_index({+1, +1})};
  const TypeTrace t = realize_type(h.poset.structure(), delta_x_less_y(), c, B);
  for (int j = 0; j < B.size(); ++j) {
    const bool is_positive_halfspace =
        B[j][0] == h.hyperplane_index(0, +1) || B[j][0] == h.hyperplane_index(1, +1);
    CHECK(t.positive_at(0, j) == is_positive_halfspace);
  }
}

TEST_CASE("enumerate_types on a 3-chain with one parameter finds the two cuts") {
  PosetView chain = make_chain(3);
  const ParamSet B = ParamSet::from_elements({1});
  const auto traces = enumerate_types(chain.structure(), delta_y_less_x(), B);
  REQUIRE(traces.size() == 2);
  CHECK(traces[0].positive.none());
  CHECK(traces[0].realizers == std::vector<int>{0, 1});
  CHECK(traces[1].positive_at(0, 0));
  CHECK(traces[1].realizers == std::vector<int>{2});
}

TEST_CASE("grid realizer set has 2n-1 types over B, at least n+1") {
  for (int n = 2; n <= 4; ++n) {
    const GridOrder g = make_grid_order({n, 3});
    const ParamSet B = ParamSet::from_elements(g.B);
    const auto traces = enumerate_types(g.poset.structure(), delta_y_less_x(), B, g.A);
    CHECK(static_cast<int>(traces.size()) == 2 * n - 1);
    CHECK(static_cast<int>(traces.size()) >= n + 1);
  }
}

TEST_CASE("hypercube points realize pairwise distinct types over the half-spaces") {
  for (int d = 1; d <= 2; ++d) {
    const HypercubePoset h = make_hypercube_poset({d});
    const ParamSet B = ParamSet::from_elements(h.hyperplanes);
    const auto traces = enumerate_types(h.poset.structure(), delta_x_less_y(), B, h.points);
    CHECK(static_cast<int>(traces.size()) == (1 << (d + 1)));
  }
}

TEST_CASE("trace count is bounded by the universe and the trace space") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 40; ++round) {
    const int w = 1 + rand_below(rng, 4);
    const int size = w + rand_below(rng, 10);
    PosetView p = random_width_poset(w, size, rng());
    const ParamSet B = ParamSet::from_elements(sample_distinct(rng, size, rand_below(rng, 4)));
    const auto traces = enumerate_types(p.structure(), delta_y_less_x(), B);
    CHECK(static_cast<int>(traces.size()) <= size);
    if (B.size() <= 4)
      CHECK(traces.size() <= (size_t{1} << static_cast<size_t>(B.size())));
    // realizers partition the universe
    int total = 0;
    for (const auto& t : traces) total += static_cast<int>(t.realizers.size());
    CHECK(total == size);
  }
}

TEST_CASE("traces transport along automorphisms") {
  const HypercubePoset h = make_hypercube_poset({2});
  const FiniteStructure& s = h.poset.structure();
  const FormulaSet delta = delta_x_less_y();
  const ParamSet B = ParamSet::from_elements(h.hyperplanes);
  const auto gens = automorphism_generators(s, {});
  REQUIRE(!gens.empty());
  for (const Permutation& sigma : gens) {
    // sigma(B), kept in the transported order
    std::vector<std::vector<int>> mapped;
    for (int j = 0; j < B.size(); ++j) mapped.push_back(sigma.apply(B[j]));
    const ParamSet sigmaB = ParamSet::from_tuples(1, mapped);
    for (int a : h.points) {
      const int plain[1] = {a};
      const int moved[1] = {sigma(a)};
      const TypeTrace t = realize_type(s, delta, plain, B);
      const TypeTrace u = realize_type(s, delta, moved, sigmaB);
      CHECK(t.positive == u.positive);
    }
  }
}

TEST_CASE("parameter sets must be distinct and well-arity") {
  CHECK_THROWS_AS(ParamSet::from_elements({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(ParamSet::from_tuples(2, {{0, 1}, {0}}), std::invalid_argument);
  PosetView chain = make_chain(3);
  const ParamSet pairs = ParamSet::from_tuples(2, {{0, 1}});
  const int a[1] = {0};
  CHECK_THROWS_AS(realize_type(chain.structure(), delta_y_less_x(), a, pairs),
                  std::invalid_argument);
}

TEST_CASE("formula sets reject stray free variables") {
  CHECK_THROWS_AS(
      make_formula_set({Formula::atom("<", {Term::variable("q"), Term::variable("x")})}),
      std::invalid_argument);
}
