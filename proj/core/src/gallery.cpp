#include "vcdlab/gallery.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "vcdlab/errors.hpp"
#include "vcdlab/resource.hpp"

namespace vcdlab {

namespace {

std::string grid_label(int x, int i) { return "x" + std::to_string(x) + "c" + std::to_string(i); }

}  // namespace

GridOrder make_grid_order(const GridOrderSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("grid order: n must be >= 1");
  if (spec.k < 2) throw std::invalid_argument("grid order: k must be >= 2");
  const int n = spec.n, k = spec.k;
  const int top = 4 * n;  // grid values 0..4n
  const int size = (top + 1) * k;

  std::vector<std::vector<int>> pairs;
  for (int x = 0; x <= top; ++x)
    for (int i = 0; i < k; ++i)
      for (int y = 0; y <= top; ++y)
        for (int j = 0; j < k; ++j) {
          const bool lt = (i == j) ? (x < y) : (x + 2 * n < y);
          if (lt) pairs.push_back({x * k + i, y * k + j});
        }

  StructureBuilder b(size);
  b.add_relation("<", 2, std::move(pairs));
  for (int x = 0; x <= top; ++x)
    for (int i = 0; i < k; ++i) b.set_label(x * k + i, grid_label(x, i));
  PosetView poset = validate_poset(std::move(b).build(), "<");

  GridOrder out{spec, poset, {}, {}};
  const int last_b_copy = std::min(2, k - 1);
  for (int x = 0; x <= top; ++x)
    for (int i = 1; i <= last_b_copy; ++i) out.B.push_back(out.index(x, i));
  out.B.push_back(out.index(2 * n, 0));
  std::sort(out.B.begin(), out.B.end());
  for (int x = 2 * n + 1; x < top; ++x) out.A.push_back(out.index(x, 0));
  return out;
}

std::vector<int> grid_copy_permutation(const GridOrderSpec& spec, const std::vector<int>& copy_perm) {
  if (static_cast<int>(copy_perm.size()) != spec.k)
    throw std::invalid_argument("copy permutation must have length k");
  const int top = 4 * spec.n;
  std::vector<int> img(static_cast<size_t>((top + 1) * spec.k));
  for (int x = 0; x <= top; ++x)
    for (int i = 0; i < spec.k; ++i)
      img[static_cast<size_t>(x * spec.k + i)] = x * spec.k + copy_perm[static_cast<size_t>(i)];
  return img;
}

int HypercubePoset::point_index(const std::vector<int>& signs) const {
  int idx = 0;
  for (int i = 0; i <= spec.d; ++i) idx = idx * 2 + (signs[static_cast<size_t>(i)] > 0 ? 1 : 0);
  return idx;
}

int HypercubePoset::sign_of(int point, int coordinate) const {
  return ((point >> (spec.d - coordinate)) & 1) ? +1 : -1;
}

int HypercubePoset::hyperplane_index(int coordinate, int sign) const {
  return point_count() + 2 * coordinate + (sign > 0 ? 0 : 1);
}

HypercubePoset make_hypercube_poset(const HypercubePosetSpec& spec) {
  if (spec.d < 1) throw std::invalid_argument("hypercube poset: d must be >= 1");
  if (spec.d > limits().hypercube_dim_cap)
    throw ResourceLimitError("hypercube poset: d " + std::to_string(spec.d) + " exceeds cap " +
                             std::to_string(limits().hypercube_dim_cap));
  const int d = spec.d;
  const int pts = 1 << (d + 1);
  const int size = pts + 2 * (d + 1);

  std::vector<std::vector<int>> pairs;
  for (int p = 0; p < pts; ++p)
    for (int i = 0; i <= d; ++i) {
      const int sign = ((p >> (d - i)) & 1) ? +1 : -1;
      pairs.push_back({p, pts + 2 * i + (sign > 0 ? 0 : 1)});
    }

  StructureBuilder b(size);
  b.add_relation("<", 2, std::move(pairs));
  for (int p = 0; p < pts; ++p) {
    std::string l = "p_";
    for (int i = 0; i <= d; ++i) l += ((p >> (d - i)) & 1) ? 'p' : 'm';
    b.set_label(p, l);
  }
  for (int i = 0; i <= d; ++i) {
    b.set_label(pts + 2 * i, "h" + std::to_string(i) + "p");
    b.set_label(pts + 2 * i + 1, "h" + std::to_string(i) + "m");
  }
  HypercubePoset out{spec, validate_poset(std::move(b).build(), "<"), {}, {}};
  for (int p = 0; p < pts; ++p) out.points.push_back(p);
  for (int h = pts; h < size; ++h) out.hyperplanes.push_back(h);
  return out;
}

std::vector<int> hypercube_coordinate_flip(const HypercubePosetSpec& spec, int coordinate) {
  const int d = spec.d;
  if (coordinate < 0 || coordinate > d)
    throw std::invalid_argument("coordinate flip: coordinate outside 0..d");
  const int pts = 1 << (d + 1);
  const int size = pts + 2 * (d + 1);
  std::vector<int> img(static_cast<size_t>(size));
  for (int p = 0; p < pts; ++p) img[static_cast<size_t>(p)] = p ^ (1 << (d - coordinate));
  for (int i = 0; i <= d; ++i) {
    const int hp = pts + 2 * i, hm = pts + 2 * i + 1;
    if (i == coordinate) {
      img[static_cast<size_t>(hp)] = hm;
      img[static_cast<size_t>(hm)] = hp;
    } else {
      img[static_cast<size_t>(hp)] = hp;
      img[static_cast<size_t>(hm)] = hm;
    }
  }
  return img;
}

namespace {

// Bounded sampling helper: deterministic across platforms, unlike the
// standard distributions.
int next_int(std::mt19937_64& rng, int bound) { return static_cast<int>(rng() % static_cast<uint64_t>(bound)); }

}  // namespace

PosetView random_width_poset(int width_target, int size, uint64_t seed) {
  if (width_target < 1) throw std::invalid_argument("random poset: width_target must be >= 1");
  if (size < width_target)
    throw std::invalid_argument("random poset: size " + std::to_string(size) +
                                " < width_target " + std::to_string(width_target));
  std::mt19937_64 rng(seed);
  const int attempts = limits().random_poset_attempts;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    // Layer sizes: first layer pinned to the target (guarantees width >= target),
    // later layers 1..width_target.
    std::vector<int> layer_of(static_cast<size_t>(size));
    std::vector<std::vector<int>> layers;
    {
      int placed = 0;
      while (placed < size) {
        int want = layers.empty() ? width_target : 1 + next_int(rng, width_target);
        want = std::min(want, size - placed);
        layers.emplace_back();
        for (int t = 0; t < want; ++t) {
          layer_of[static_cast<size_t>(placed)] = static_cast<int>(layers.size()) - 1;
          layers.back().push_back(placed++);
        }
      }
    }
    std::vector<std::vector<int>> pairs;
    for (size_t l = 1; l < layers.size(); ++l) {
      const auto& prev = layers[l - 1];
      for (int e : layers[l]) {
        const int forced = prev[static_cast<size_t>(next_int(rng, static_cast<int>(prev.size())))];
        pairs.push_back({forced, e});
        for (int q : prev)
          if (q != forced && next_int(rng, 2) == 0) pairs.push_back({q, e});
      }
    }
    pairs = transitive_closure_pairs(size, pairs);
    StructurePtr s = StructureBuilder(size).add_relation("<", 2, std::move(pairs)).build();
    PosetView p = validate_poset(std::move(s), "<");
    if (width(p) == width_target) return p;
  }
  throw ResourceLimitError("random poset: no width-" + std::to_string(width_target) +
                           " instance of size " + std::to_string(size) + " found in " +
                           std::to_string(attempts) + " attempts");
}

}  // namespace vcdlab
