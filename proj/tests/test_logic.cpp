#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/helpers.hpp"
#include "vcdlab/errors.hpp"
#include "vcdlab/eval.hpp"
#include "vcdlab/gallery.hpp"
#include "vcdlab/parser.hpp"
#include "vcdlab/resource.hpp"
#include "vcdlab/symmetry.hpp"

using namespace vcdlab;
using namespace vcdlab::testing;

TEST_CASE("parsing atoms and quantifiers") {
  PosetView chain = make_chain(3);
  ParseContext ctx{chain.share().get(), "<"};

  Formula f = parse_formula("y < x", ctx);
  CHECK(f.kind() == Formula::Kind::Atom);
  CHECK(f.rel() == "<");
  CHECK(f.free_vars() == std::vector<std::string>{"x", "y"});

  Formula q = parse_formula("exists z. (z < x & z < y)", ctx);
  CHECK(q.kind() == Formula::Kind::Exists);
  CHECK(q.free_vars() == std::vector<std::string>{"x", "y"});
}

TEST_CASE("parse errors carry byte offsets") {
  PosetView chain = make_chain(3);
  ParseContext ctx{chain.share().get(), "<"};
  try {
    parse_formula("x <", ctx);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 3);
  }
  CHECK_THROWS_AS(parse_formula("frob(x, y)", ctx), ParseError);  // unknown relation
  auto with_edge =
      StructureBuilder(3).add_relation("E", 2, {{0, 1}}).build();
  ParseContext ectx{with_edge.get(), "E"};
  CHECK_THROWS_AS(parse_formula("E(x, y, z)", ectx), ParseError);  // arity mismatch
  CHECK_THROWS_AS(parse_formula("x < @nolabel", ctx), ParseError);   // unknown label
  CHECK_THROWS_AS(parse_formula("x < @9", ctx), ParseError);         // constant outside universe
  CHECK_THROWS_AS(parse_formula("forall[>=2] v. v < x", ctx), ParseError);
  CHECK_THROWS_AS(parse_formula("exists[>=0] v. v < x", ctx), ParseError);
}

TEST_CASE("evaluation on chains and the hypercube") {
  PosetView chain = make_chain(2);
  ParseContext ctx{chain.share().get(), "<"};
  CHECK(eval(chain.structure(), parse_formula("x < y", ctx), Env{{"x", 0}, {"y", 1}}));
  CHECK(eval(chain.structure(), parse_formula("x = x", ctx), Env{{"x", 1}}));

  const HypercubePoset h = make_hypercube_poset({1});
  ParseContext hctx{h.poset.share().get(), "<"};
  Env env{{"x", h.point_index({+1, +1})}, {"y", h.hyperplane_index(0, +1)}};
  CHECK(eval(h.poset.structure(), parse_formula("x < y", hctx), env));
}

TEST_CASE("evaluation rejects unbound variables and stray constants") {
  PosetView chain = make_chain(2);
  ParseContext ctx{chain.share().get(), "<"};
  CHECK_THROWS_AS(eval(chain.structure(), parse_formula("x < y", ctx), Env{{"x", 0}}),
                  std::invalid_argument);
  Formula bad = Formula::atom("<", {Term::constant(7), Term::variable("x")});
  CHECK_THROWS_AS(eval(chain.structure(), bad, Env{{"x", 0}}), std::invalid_argument);
}

TEST_CASE("satisfier sets") {
  PosetView chain = make_chain(3);
  ParseContext ctx{chain.share().get(), "<"};
  CHECK(satisfier_elements(chain.structure(), parse_formula("x < @2", ctx), "x") ==
        std::vector<int>{0, 1});
  CHECK(satisfier_elements(chain.structure(), parse_formula("x < x", ctx), "x").empty());

  const GridOrder g = make_grid_order({1, 3});
  ParseContext gctx{g.poset.share().get(), "<"};
  // below (2,0): the whole lower copy-0 segment; cross-copy needs y + 2 < 2
  Formula f = parse_formula("y < @x2c0", gctx);
  CHECK(satisfier_elements(g.poset.structure(), f, "y") ==
        std::vector<int>{g.index(0, 0), g.index(1, 0)});

  CHECK_THROWS_AS(satisfier_set(chain.structure(), parse_formula("x < y", ctx), "x"),
                  std::invalid_argument);
}

TEST_CASE("counting expansion shapes") {
  Formula body = Formula::atom("<", {Term::variable("v"), Term::variable("x")});
  Formula once = expand_counting(Formula::count_at_least(1, "v", body));
  CHECK(once.kind() == Formula::Kind::Exists);
  CHECK(once.var() == "v");

  Formula twice = expand_counting(Formula::count_at_least(2, "v", body));
  CHECK(twice.kind() == Formula::Kind::Exists);
  CHECK(twice.to_string() == "exists v1. exists v2. (v1 < x & v2 < x & !v1 = v2)");

  // the d=2 emission threshold expands into 2^d = 4 witness variables
  Formula case3 = expand_counting(Formula::count_at_least(4, "v", body));
  int exist_depth = 0;
  for (Formula f = case3; f.kind() == Formula::Kind::Exists; f = f.children()[0]) ++exist_depth;
  CHECK(exist_depth == 4);

  CHECK_THROWS_AS(Formula::count_at_least(0, "v", body), std::invalid_argument);
}

TEST_CASE("counting expansion preserves truth on random structures") {
  std::mt19937_64 rng(21);
  int checked = 0;
  for (int round = 0; round < 150; ++round) {
    const int w = 1 + rand_below(rng, 3);
    const int size = w + rand_below(rng, 6);
    PosetView p = random_width_poset(w, size, rng());
    Formula f = random_formula(rng, p.size(), 6);
    Formula g = expand_counting(f);
    if (g.quantifier_depth() > limits().quantifier_depth_cap) continue;
    // exhaustive environment sweep over the free variables
    const auto& fv = f.free_vars();
    if (fv.size() > 2) continue;
    std::vector<int> assignment(fv.size(), 0);
    bool done = false;
    while (!done) {
      Env env;
      for (size_t i = 0; i < fv.size(); ++i) env.bind(fv[i], assignment[i]);
      CHECK(eval(p.structure(), f, env) == eval(p.structure(), g, env));
      ++checked;
      done = true;
      for (size_t i = 0; i < fv.size(); ++i) {
        if (assignment[i] + 1 < p.size()) {
          ++assignment[i];
          for (size_t j = 0; j < i; ++j) assignment[j] = 0;
          done = false;
          break;
        }
      }
    }
  }
  CHECK(checked > 200);
}

TEST_CASE("printer and parser round-trip") {
  std::mt19937_64 rng(22);
  PosetView chain = make_chain(4);
  ParseContext ctx{chain.share().get(), "<"};
  for (int round = 0; round < 400; ++round) {
    Formula f = random_formula(rng, 4, 8);
    Formula back = parse_formula(f.to_string(), ctx);
    CHECK(back == f);
    // canonical form is a fixed point of print-parse
    CHECK(back.to_string() == f.to_string());
  }
}

TEST_CASE("evaluation is invariant under automorphisms") {
  const HypercubePoset h = make_hypercube_poset({2});
  const FiniteStructure& s = h.poset.structure();
  ParseContext ctx{h.poset.share().get(), "<"};
  const std::vector<Formula> formulas{
      parse_formula("exists z. (z < x & z < y)", ctx),
      parse_formula("x < y | y < x", ctx),
      parse_formula("forall z. (z < x -> z < y)", ctx),
      parse_formula("exists[>=2] z. z < x", ctx),
  };
  const auto gens = automorphism_generators(s, {});
  REQUIRE(!gens.empty());
  for (const Formula& f : formulas)
    for (const Permutation& sigma : gens)
      for (int x = 0; x < s.universe_size(); x += 3)
        for (int y = 0; y < s.universe_size(); y += 2) {
          Env plain{{"x", x}, {"y", y}};
          Env mapped{{"x", sigma(x)}, {"y", sigma(y)}};
          CHECK(eval(s, f, plain) == eval(s, f, mapped));
        }
}

TEST_CASE("parameter accounting under conjunction") {
  Formula f = Formula::atom("<", {Term::variable("x"), Term::constant(3)});
  Formula g = Formula::conjunction(
      {f, Formula::atom("<", {Term::constant(5), Term::variable("x")})});
  CHECK(f.param_count() == 1);
  CHECK(g.param_count() <= f.param_count() + 1);
  // an already-used constant adds nothing
  Formula again = Formula::conjunction({g, Formula::eq(Term::variable("x"), Term::constant(3))});
  CHECK(again.param_count() == g.param_count());
}

TEST_CASE("quantifier depth cap rejects deep formulas") {
  const int saved = limits().quantifier_depth_cap;
  limits().quantifier_depth_cap = 2;
  PosetView chain = make_chain(3);
  Formula deep = Formula::exists(
      "a", Formula::exists("b", Formula::exists("c", Formula::atom("<", {Term::variable("a"),
                                                                         Term::variable("c")}))));
  CHECK_THROWS_AS(eval(chain.structure(), deep, Env{}), ResourceLimitError);
  limits().quantifier_depth_cap = saved;
  CHECK(eval(chain.structure(), deep, Env{}));
}

TEST_CASE("substitution respects binding and rejects capture") {
  Formula f = Formula::exists("z", Formula::atom("<", {Term::variable("z"), Term::variable("x")}));
  Formula g = substitute(f, "x", Term::constant(1));
  CHECK(g.free_vars().empty());
  // substituting the bound name is a no-op
  CHECK(substitute(f, "z", Term::constant(0)) == f);
  CHECK_THROWS_AS(substitute(f, "x", Term::variable("z")), std::logic_error);
}
