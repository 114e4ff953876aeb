#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vcdlab/structure.hpp"

namespace vcdlab {

/// Grid discretization of k stacked copies of a dense line: universe
/// {0..4n} x {0..k-1}, encoded as x*k + i, with
///   (x,i) < (y,j)  iff  (i = j and x < y) or (i != j and x + 2n < y).
/// The half-unit threshold of the continuous construction lands on the grid
/// point 2n, so all arithmetic stays integral.
struct GridOrderSpec {
  int n = 1;  // grid granularity, >= 1
  int k = 3;  // number of copies, >= 2
};

struct GridOrder {
  GridOrderSpec spec;
  PosetView poset;
  std::vector<int> B;  // designated parameter set
  std::vector<int> A;  // designated realizer set, copy 0 strictly between 2n and 4n

  int index(int x, int i) const { return x * spec.k + i; }
  int grid_of(int e) const { return e / spec.k; }
  int copy_of(int e) const { return e % spec.k; }
};

/// Builds the grid poset with its designated sets. B consists of every grid
/// value in copies 1 and 2 (copy 1 only when k = 2) plus the distinguished
/// element (2n, 0); A is {(x,0) : 2n < x < 4n}.
GridOrder make_grid_order(const GridOrderSpec& spec);

/// Image array of the automorphism permuting the copies by `copy_perm`
/// (a permutation of 0..k-1) while fixing the grid coordinate.
std::vector<int> grid_copy_permutation(const GridOrderSpec& spec, const std::vector<int>& copy_perm);

/// Membership poset of the coordinate half-spaces of the sign hypercube:
/// points P = {+1,-1}^{d+1} below the 2(d+1) half-space elements, one per
/// (coordinate, sign). width = |P| = 2^{d+1}.
struct HypercubePosetSpec {
  int d = 1;  // >= 1
};

struct HypercubePoset {
  HypercubePosetSpec spec;
  PosetView poset;
  std::vector<int> points;       // indices 0 .. 2^{d+1}-1, lexicographic sign order (-1 before +1)
  std::vector<int> hyperplanes;  // then H_{0,+1}, H_{0,-1}, H_{1,+1}, ...

  int point_count() const { return 1 << (spec.d + 1); }
  int point_index(const std::vector<int>& signs) const;  // signs in {-1,+1}, length d+1
  int sign_of(int point, int coordinate) const;          // -1 or +1
  int hyperplane_index(int coordinate, int sign) const;
};

HypercubePoset make_hypercube_poset(const HypercubePosetSpec& spec);

/// Image array of the automorphism flipping coordinate i: negates that sign
/// on every point and swaps the two half-spaces of coordinate i. Fixes no
/// point and all other half-spaces.
std::vector<int> hypercube_coordinate_flip(const HypercubePosetSpec& spec, int coordinate);

/// Seeded random poset with width exactly `width_target`: layered random
/// DAGs (first layer pinned to the target width, later layers at most that
/// wide), transitively closed, rejection-sampled on the exact width.
/// Identical seeds give identical posets.
PosetView random_width_poset(int width_target, int size, uint64_t seed);

}  // namespace vcdlab
