#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "vcdlab/formula.hpp"
#include "vcdlab/structure.hpp"

namespace vcdlab::testing {

inline PosetView make_chain(int n) {
  std::vector<std::vector<int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
  return validate_poset(StructureBuilder(n).add_relation("<", 2, pairs).build(), "<");
}

inline PosetView make_antichain(int n) {
  return validate_poset(StructureBuilder(n).add_relation("<", 2, {}).build(), "<");
}

inline PosetView make_diamond() {
  return validate_poset(
      StructureBuilder(4).add_relation("<", 2, {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}}).build(),
      "<");
}

/// Independent exact maximum-antichain size: include/exclude recursion with a
/// remaining-count bound only. Kept separate from the production search.
inline int brute_max_antichain(const PosetView& p) {
  const int n = p.size();
  std::vector<int> chosen;
  int best = 0;
  auto rec = [&](auto&& self, int next) -> void {
    best = std::max(best, static_cast<int>(chosen.size()));
    if (next == n || static_cast<int>(chosen.size()) + (n - next) <= best) return;
    bool ok = true;
    for (int c : chosen)
      if (p.comparable(c, next)) {
        ok = false;
        break;
      }
    if (ok) {
      chosen.push_back(next);
      self(self, next + 1);
      chosen.pop_back();
    }
    self(self, next + 1);
  };
  rec(rec, 0);
  return best;
}

/// Plain triple-loop reading of the three strict-order axioms, used as the
/// reference in the validate_poset property test.
inline bool naive_is_strict_order(int n, const std::vector<std::vector<int>>& pairs) {
  std::vector<std::vector<bool>> lt(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n)));
  for (const auto& p : pairs) lt[static_cast<size_t>(p[0])][static_cast<size_t>(p[1])] = true;
  for (int a = 0; a < n; ++a)
    if (lt[static_cast<size_t>(a)][static_cast<size_t>(a)]) return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (lt[static_cast<size_t>(a)][static_cast<size_t>(b)] && lt[static_cast<size_t>(b)][static_cast<size_t>(a)])
        return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (lt[static_cast<size_t>(a)][static_cast<size_t>(b)] && lt[static_cast<size_t>(b)][static_cast<size_t>(c)] &&
            !lt[static_cast<size_t>(a)][static_cast<size_t>(c)])
          return false;
  return true;
}

inline int rand_below(std::mt19937_64& rng, int bound) {
  return static_cast<int>(rng() % static_cast<uint64_t>(bound));
}

inline std::vector<int> sample_distinct(std::mt19937_64& rng, int universe, int count) {
  std::vector<int> pool(static_cast<size_t>(universe));
  for (int i = 0; i < universe; ++i) pool[static_cast<size_t>(i)] = i;
  std::vector<int> out;
  for (int i = 0; i < count && !pool.empty(); ++i) {
    const int pick = rand_below(rng, static_cast<int>(pool.size()));
    out.push_back(pool[static_cast<size_t>(pick)]);
    pool.erase(pool.begin() + pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Random formula AST over one binary relation "<", for round-trip and
/// expansion properties. `budget` bounds the node count.
inline Formula random_formula(std::mt19937_64& rng, int universe, int budget, int depth = 0) {
  static const std::vector<std::string> vars{"x", "y", "z", "w"};
  auto term = [&]() {
    if (universe > 0 && rand_below(rng, 4) == 0)
      return Term::constant(rand_below(rng, universe));
    return Term::variable(vars[static_cast<size_t>(rand_below(rng, static_cast<int>(vars.size())))]);
  };
  if (budget <= 1 || depth > 4) {
    if (rand_below(rng, 3) == 0) return Formula::eq(term(), term());
    return Formula::atom("<", {term(), term()});
  }
  switch (rand_below(rng, 8)) {
    case 0: return Formula::negation(random_formula(rng, universe, budget - 1, depth + 1));
    case 1: {
      std::vector<Formula> cs;
      const int k = 2 + rand_below(rng, 2);
      for (int i = 0; i < k; ++i) cs.push_back(random_formula(rng, universe, budget / k, depth + 1));
      return Formula::conjunction(std::move(cs));
    }
    case 2: {
      std::vector<Formula> cs;
      const int k = 2 + rand_below(rng, 2);
      for (int i = 0; i < k; ++i) cs.push_back(random_formula(rng, universe, budget / k, depth + 1));
      return Formula::disjunction(std::move(cs));
    }
    case 3:
      return Formula::implies(random_formula(rng, universe, budget / 2, depth + 1),
                              random_formula(rng, universe, budget / 2, depth + 1));
    case 4:
      return Formula::iff(random_formula(rng, universe, budget / 2, depth + 1),
                          random_formula(rng, universe, budget / 2, depth + 1));
    case 5:
      return Formula::exists(vars[static_cast<size_t>(rand_below(rng, 4))],
                             random_formula(rng, universe, budget - 1, depth + 1));
    case 6:
      return Formula::forall(vars[static_cast<size_t>(rand_below(rng, 4))],
                             random_formula(rng, universe, budget - 1, depth + 1));
    default:
      return Formula::count_at_least(1 + rand_below(rng, 3),
                                     vars[static_cast<size_t>(rand_below(rng, 4))],
                                     random_formula(rng, universe, budget - 1, depth + 1));
  }
}

}  // namespace vcdlab::testing
