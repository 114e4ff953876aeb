#pragma once

#include <span>
#include <vector>

#include "vcdlab/structure.hpp"

namespace vcdlab {

/// A permutation of the universe, stored as its image array.
struct Permutation {
  std::vector<int> image;

  static Permutation identity(int n);

  int size() const { return static_cast<int>(image.size()); }
  int operator()(int e) const { return image[static_cast<size_t>(e)]; }
  std::vector<int> apply(std::span<const int> tuple) const;

  bool is_bijection() const;
  bool is_identity() const;
  Permutation inverse() const;
  /// (*this) after `inner`: result(x) = this(inner(x)).
  Permutation after(const Permutation& inner) const;

  bool operator==(const Permutation& o) const { return image == o.image; }
  bool operator<(const Permutation& o) const { return image < o.image; }
};

/// Orbits of the universe under the automorphism group fixing `fixed`
/// pointwise. Fixed elements are singleton orbits.
struct OrbitPartition {
  std::vector<int> fixed;                // the stabilized elements, sorted
  std::vector<std::vector<int>> orbits;  // sorted by least member; members sorted
  std::vector<int> orbit_index;          // element -> position in `orbits`

  bool same_orbit(int a, int b) const {
    return orbit_index[static_cast<size_t>(a)] == orbit_index[static_cast<size_t>(b)];
  }
};

/// True iff the bijection preserves every relation in both directions.
bool is_automorphism(const FiniteStructure& s, const Permutation& p);

/// Generating set for Aut(s / fixed pointwise). The search is exhaustive:
/// iterated-degree colors seeded with singleton colors on the fixed elements
/// prune candidates, backtracking with forward checking enumerates every
/// automorphism, and a greedy pass keeps the lexicographically least image
/// arrays that generate the whole group. Aborts via ResourceLimitError when
/// the node budget runs out -- never returns an incomplete group silently.
std::vector<Permutation> automorphism_generators(const FiniteStructure& s,
                                                 const std::vector<int>& fixed);

/// Orbit partition of the universe under the generated group.
OrbitPartition orbits(const FiniteStructure& s, const std::vector<int>& fixed);

/// Every automorphism fixing `fixed`, by filtering all n! bijections.
/// Reference path for cross-checks; guarded to universes of size <= 8.
std::vector<Permutation> brute_force_automorphisms(const FiniteStructure& s,
                                                   const std::vector<int>& fixed);

/// All group elements generated by `gens` (BFS closure, capped).
std::vector<Permutation> group_closure(int n, const std::vector<Permutation>& gens);

/// Stable iterated-degree coloring of the universe, refined from the seed.
/// Equal colors are a necessary condition for being automorphic; the seed
/// must already be automorphism-invariant for that reading. Colors are dense
/// and deterministically numbered.
std::vector<int> refine_colors(const FiniteStructure& s, const std::vector<int>& seed);

}  // namespace vcdlab
