#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>

#include "support/helpers.hpp"
#include "vcdlab/errors.hpp"
#include "vcdlab/gallery.hpp"
#include "vcdlab/io.hpp"
#include "vcdlab/resource.hpp"
#include "vcdlab/symmetry.hpp"
#include "vcdlab/typespace.hpp"

using namespace vcdlab;
using namespace vcdlab::testing;

TEST_CASE("grid order sizes and widths") {
  const GridOrder g13 = make_grid_order({1, 3});
  CHECK(g13.poset.size() == 15);  // (4n+1)*k
  CHECK(width(g13.poset) == 3);
  CHECK(width(make_grid_order({1, 2}).poset) == 2);
}

TEST_CASE("grid designated sets follow the construction") {
  const GridOrder g = make_grid_order({2, 3});
  // B: copies 1 and 2 in full, plus the distinguished (2n, 0)
  CHECK(g.B.size() == 2u * 9 + 1);
  for (int e : g.B) {
    const int copy = g.copy_of(e);
    CHECK((copy == 1 || copy == 2 || (copy == 0 && g.grid_of(e) == 4)));
  }
  // A: copy 0, strictly between 2n and 4n
  CHECK(g.A.size() == 3);
  for (int e : g.A) {
    CHECK(g.copy_of(e) == 0);
    CHECK(g.grid_of(e) > 4);
    CHECK(g.grid_of(e) < 8);
  }
}

TEST_CASE("two-copy grids put every non-zero copy into B") {
  const GridOrder g = make_grid_order({1, 2});
  CHECK(g.B.size() == 5u + 1);  // all of copy 1, plus (2n, 0)
  for (int e : g.B) CHECK((g.copy_of(e) == 1 || e == g.index(2, 0)));
}

TEST_CASE("grid cross-copy comparisons use the half-span threshold") {
  const GridOrder g = make_grid_order({1, 3});
  const PosetView& p = g.poset;
  CHECK(p.less(g.index(0, 0), g.index(1, 0)));        // same copy: plain order
  CHECK_FALSE(p.less(g.index(0, 0), g.index(2, 1)));  // 0 + 2n == 2, not <
  CHECK(p.less(g.index(0, 0), g.index(3, 1)));        // 0 + 2n < 3
}

TEST_CASE("grid: |A| distinct types over B grow with the resolution") {
  for (int n = 2; n <= 4; ++n) {
    const GridOrder g = make_grid_order({n, 3});
    const FiniteStructure& s = g.poset.structure();
    const FormulaSet delta =
        make_formula_set({Formula::atom("<", {Term::variable("y"), Term::variable("x")})});
    const ParamSet B = ParamSet::from_elements(g.B);
    const auto traces = enumerate_types(s, delta, B, g.A);
    // oracle: realizers are told apart exactly by the integer cut x - 2n
    std::set<int> cuts;
    for (int a : g.A) cuts.insert(g.grid_of(a) - 2 * n);
    CHECK(static_cast<int>(traces.size()) == static_cast<int>(cuts.size()));
    CHECK(static_cast<int>(traces.size()) == 2 * n - 1);
    CHECK(static_cast<int>(traces.size()) >= n + 1);
  }
}

TEST_CASE("every copy permutation is a grid automorphism") {
  const GridOrderSpec spec{1, 3};
  const GridOrder g = make_grid_order(spec);
  std::vector<int> perm{0, 1, 2};
  int count = 0;
  do {
    Permutation sigma{grid_copy_permutation(spec, perm)};
    CHECK(is_automorphism(g.poset.structure(), sigma));
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(count == 6);
}

TEST_CASE("hypercube poset shape") {
  const HypercubePoset h1 = make_hypercube_poset({1});
  CHECK(h1.poset.size() == 8);  // 2^2 points + 4 half-spaces
  CHECK(h1.points.size() == 4);
  CHECK(h1.hyperplanes.size() == 4);

  // membership: a < H_{i,eps} iff the i-th sign is eps
  const int p = h1.point_index({+1, -1});
  CHECK(h1.poset.less(p, h1.hyperplane_index(0, +1)));
  CHECK_FALSE(h1.poset.less(p, h1.hyperplane_index(0, -1)));
  CHECK(h1.poset.less(p, h1.hyperplane_index(1, -1)));
  // the order never goes the other way
  CHECK_FALSE(h1.poset.less(h1.hyperplane_index(0, +1), p));
}

TEST_CASE("hypercube zero-parameter classes have sizes 2^{d+1} and 2(d+1)") {
  const HypercubePoset h = make_hypercube_poset({2});
  OrbitPartition orb = orbits(h.poset.structure(), {});
  REQUIRE(orb.orbits.size() == 2);
  std::set<size_t> sizes{orb.orbits[0].size(), orb.orbits[1].size()};
  CHECK(sizes == std::set<size_t>{8, 6});
}

TEST_CASE("hypercube automorphism group order at d=1 is 8") {
  const HypercubePoset h = make_hypercube_poset({1});
  CHECK(brute_force_automorphisms(h.poset.structure(), {}).size() == 8);
}

TEST_CASE("coordinate flips are automorphisms fixing no point and all but two half-spaces") {
  for (int d = 1; d <= 3; ++d) {
    const HypercubePoset h = make_hypercube_poset({d});
    for (int i = 0; i <= d; ++i) {
      Permutation sigma{hypercube_coordinate_flip({d}, i)};
      CHECK(is_automorphism(h.poset.structure(), sigma));
      int fixed_points = 0, fixed_planes = 0;
      for (int p : h.points)
        if (sigma(p) == p) ++fixed_points;
      for (int hp : h.hyperplanes)
        if (sigma(hp) == hp) ++fixed_planes;
      CHECK(fixed_points == 0);
      CHECK(fixed_planes == 2 * d);  // all but the two half-spaces of coordinate i
    }
  }
}

TEST_CASE("generators are deterministic across calls") {
  const auto a = model_to_json(make_grid_order({2, 4}).poset.structure()).dump();
  const auto b = model_to_json(make_grid_order({2, 4}).poset.structure()).dump();
  CHECK(a == b);
  const auto ha = model_to_json(make_hypercube_poset({2}).poset.structure()).dump();
  const auto hb = model_to_json(make_hypercube_poset({2}).poset.structure()).dump();
  CHECK(ha == hb);
}

TEST_CASE("model files round-trip through the wire format") {
  const GridOrder g = make_grid_order({1, 3});
  const auto path = std::filesystem::temp_directory_path() / "vcdlab_roundtrip.json";
  write_model_file(path.string(), g.poset.structure(), {{"B", g.B}, {"A", g.A}});
  const ModelFile back = read_model_file(path.string());
  CHECK(model_to_json(*back.structure, back.sets) ==
        model_to_json(g.poset.structure(), {{"B", g.B}, {"A", g.A}}));
  CHECK(back.structure->element_by_label("x2c0") == g.index(2, 0));
  CHECK(back.sets.at("A") == g.A);
}

TEST_CASE("generator input validation") {
  CHECK_THROWS_AS(make_grid_order({0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(make_grid_order({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(make_hypercube_poset({0}), std::invalid_argument);
  CHECK_THROWS_AS(make_hypercube_poset({11}), ResourceLimitError);
}

TEST_CASE("random posets hit the target width exactly and reproduce by seed") {
  PosetView p = random_width_poset(3, 12, 42);
  CHECK(width(p) == 3);
  PosetView q = random_width_poset(3, 12, 42);
  CHECK(model_to_json(p.structure()).dump() == model_to_json(q.structure()).dump());

  PosetView other = random_width_poset(3, 12, 43);
  CHECK(width(other) == 3);
}

TEST_CASE("width 1 forces a chain") {
  PosetView p = random_width_poset(1, 6, 5);
  CHECK(width(p) == 1);
  for (int a = 0; a < p.size(); ++a)
    for (int b = a + 1; b < p.size(); ++b) CHECK(p.comparable(a, b));
}

TEST_CASE("impossible random poset sizes are rejected") {
  CHECK_THROWS_AS(random_width_poset(5, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_width_poset(0, 4, 1), std::invalid_argument);
}

TEST_CASE("the generator gives up after the configured number of rejections") {
  const int saved = limits().random_poset_attempts;
  limits().random_poset_attempts = 0;
  CHECK_THROWS_AS(random_width_poset(2, 8, 9), ResourceLimitError);
  limits().random_poset_attempts = saved;
}
