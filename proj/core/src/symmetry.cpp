#include "vcdlab/symmetry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "vcdlab/bitset.hpp"
#include "vcdlab/errors.hpp"
#include "vcdlab/resource.hpp"

namespace vcdlab {

Permutation Permutation::identity(int n) {
  Permutation p;
  p.image.resize(static_cast<size_t>(n));
  std::iota(p.image.begin(), p.image.end(), 0);
  return p;
}

std::vector<int> Permutation::apply(std::span<const int> tuple) const {
  std::vector<int> out;
  out.reserve(tuple.size());
  for (int e : tuple) out.push_back(image[static_cast<size_t>(e)]);
  return out;
}

bool Permutation::is_bijection() const {
  std::vector<bool> seen(image.size(), false);
  for (int v : image) {
    if (v < 0 || v >= size() || seen[static_cast<size_t>(v)]) return false;
    seen[static_cast<size_t>(v)] = true;
  }
  return true;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (image[static_cast<size_t>(i)] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.image.resize(image.size());
  for (int i = 0; i < size(); ++i) p.image[static_cast<size_t>(image[static_cast<size_t>(i)])] = i;
  return p;
}

Permutation Permutation::after(const Permutation& inner) const {
  Permutation p;
  p.image.resize(image.size());
  for (int i = 0; i < size(); ++i)
    p.image[static_cast<size_t>(i)] = image[static_cast<size_t>(inner.image[static_cast<size_t>(i)])];
  return p;
}

bool is_automorphism(const FiniteStructure& s, const Permutation& p) {
  if (p.size() != s.universe_size())
    throw std::invalid_argument("permutation length does not match the universe");
  if (!p.is_bijection()) return false;
  // A bijection with pi(R) subseteq R on a finite relation preserves it in
  // both directions.
  for (const auto& [name, arity] : s.signature()) {
    const Relation& r = s.relation(name);
    for (const auto& t : r.tuples)
      if (!r.contains(p.apply(t))) return false;
  }
  return true;
}

std::vector<int> refine_colors(const FiniteStructure& s, const std::vector<int>& seed) {
  const int n = s.universe_size();
  std::vector<int> color = seed;
  color.resize(static_cast<size_t>(n), 0);
  int classes = 0;
  {
    std::map<int, int> dense;
    for (int v = 0; v < n; ++v) {
      auto [it, fresh] = dense.emplace(color[static_cast<size_t>(v)], classes);
      if (fresh) ++classes;
      color[static_cast<size_t>(v)] = it->second;
    }
  }
  while (true) {
    // signature: old color plus, per relation and argument position, the
    // sorted multiset of co-occurring color tuples
    std::vector<std::vector<long long>> sig(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) sig[static_cast<size_t>(v)].push_back(color[static_cast<size_t>(v)]);
    for (const auto& [name, arity] : s.signature()) {
      const Relation& r = s.relation(name);
      std::vector<std::vector<std::vector<long long>>> occ(
          static_cast<size_t>(n), std::vector<std::vector<long long>>(static_cast<size_t>(arity)));
      for (const auto& t : r.tuples) {
        for (int pos = 0; pos < arity; ++pos) {
          long long packed = 0;
          for (int q = 0; q < arity; ++q) {
            if (q == pos) continue;
            packed = packed * (n + 1) + color[static_cast<size_t>(t[static_cast<size_t>(q)])] + 1;
          }
          occ[static_cast<size_t>(t[static_cast<size_t>(pos)])][static_cast<size_t>(pos)].push_back(
              packed);
        }
      }
      for (int v = 0; v < n; ++v)
        for (int pos = 0; pos < arity; ++pos) {
          auto& m = occ[static_cast<size_t>(v)][static_cast<size_t>(pos)];
          std::sort(m.begin(), m.end());
          sig[static_cast<size_t>(v)].push_back(-1);  // separator
          sig[static_cast<size_t>(v)].insert(sig[static_cast<size_t>(v)].end(), m.begin(), m.end());
        }
    }
    std::map<std::vector<long long>, int> dense;
    std::vector<int> next(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
      auto [it, fresh] = dense.emplace(sig[static_cast<size_t>(v)], static_cast<int>(dense.size()));
      (void)fresh;
      next[static_cast<size_t>(v)] = it->second;
    }
    if (static_cast<int>(dense.size()) == classes) return color;
    classes = static_cast<int>(dense.size());
    color = std::move(next);
  }
}

namespace {

// Exhaustive automorphism enumeration: color-compatible candidates with
// forward checking over the binary relations, verified in full at the leaves.
class AutSearch {
 public:
  AutSearch(const FiniteStructure& s, const std::vector<int>& fixed) : s_(s), n_(s.universe_size()) {
    std::vector<int> seed(static_cast<size_t>(n_), 0);
    int tag = 1;
    for (int f : fixed) {
      if (f < 0 || f >= n_) throw std::invalid_argument("fixed element outside universe");
      seed[static_cast<size_t>(f)] = tag++;
    }
    colors_ = refine_colors(s_, seed);
    for (const auto& [name, arity] : s_.signature()) {
      if (arity != 2) continue;  // wide relations are checked at the leaves
      const Relation& r = s_.relation(name);
      BinRel b;
      b.row.assign(static_cast<size_t>(n_), DynBitset(n_));
      b.col.assign(static_cast<size_t>(n_), DynBitset(n_));
      b.nrow.assign(static_cast<size_t>(n_), DynBitset(n_));
      b.ncol.assign(static_cast<size_t>(n_), DynBitset(n_));
      for (const auto& t : r.tuples) {
        b.row[static_cast<size_t>(t[0])].set(t[1]);
        b.col[static_cast<size_t>(t[1])].set(t[0]);
      }
      for (int v = 0; v < n_; ++v)
        for (int u = 0; u < n_; ++u) {
          if (!b.row[static_cast<size_t>(v)].test(u)) b.nrow[static_cast<size_t>(v)].set(u);
          if (!b.col[static_cast<size_t>(v)].test(u)) b.ncol[static_cast<size_t>(v)].set(u);
        }
      bins_.push_back(std::move(b));
    }
  }

  std::vector<Permutation> run() {
    std::vector<DynBitset> cand(static_cast<size_t>(n_), DynBitset(n_));
    for (int v = 0; v < n_; ++v)
      for (int w = 0; w < n_; ++w)
        if (colors_[static_cast<size_t>(v)] == colors_[static_cast<size_t>(w)])
          cand[static_cast<size_t>(v)].set(w);
    img_.assign(static_cast<size_t>(n_), -1);
    search(cand, 0);
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  struct BinRel {
    std::vector<DynBitset> row, col, nrow, ncol;
  };

  void search(const std::vector<DynBitset>& cand, int assigned) {
    if (++nodes_ > limits().aut_node_budget)
      throw ResourceLimitError("automorphism search exceeded node budget of " +
                               std::to_string(limits().aut_node_budget));
    if (assigned == n_) {
      Permutation p{img_};
      if (is_automorphism(s_, p)) found_.push_back(std::move(p));
      return;
    }
    // most-constrained unassigned vertex, ties by index
    int v = -1, best = n_ + 1;
    for (int u = 0; u < n_; ++u) {
      if (img_[static_cast<size_t>(u)] >= 0) continue;
      const int c = cand[static_cast<size_t>(u)].count();
      if (c < best) {
        best = c;
        v = u;
      }
    }
    if (best == 0) return;
    const DynBitset options = cand[static_cast<size_t>(v)];
    for (int w = options.next(0); w >= 0; w = options.next(w + 1)) {
      img_[static_cast<size_t>(v)] = w;
      std::vector<DynBitset> next = cand;
      next[static_cast<size_t>(v)] = DynBitset(n_);
      next[static_cast<size_t>(v)].set(w);
      bool dead = false;
      for (int u = 0; u < n_ && !dead; ++u) {
        if (img_[static_cast<size_t>(u)] >= 0 || u == v) continue;
        DynBitset& cu = next[static_cast<size_t>(u)];
        cu.reset(w);
        for (const BinRel& b : bins_) {
          cu &= b.row[static_cast<size_t>(u)].test(v) ? b.col[static_cast<size_t>(w)]
                                                      : b.ncol[static_cast<size_t>(w)];
          cu &= b.col[static_cast<size_t>(u)].test(v) ? b.row[static_cast<size_t>(w)]
                                                      : b.nrow[static_cast<size_t>(w)];
        }
        if (cu.none()) dead = true;
      }
      if (!dead) search(next, assigned + 1);
      img_[static_cast<size_t>(v)] = -1;
    }
  }

  const FiniteStructure& s_;
  int n_;
  std::vector<int> colors_;
  std::vector<BinRel> bins_;
  std::vector<int> img_;
  std::vector<Permutation> found_;
  int64_t nodes_ = 0;
};

// Greedy generating set: walk the sorted group elements, keep one whenever it
// is not already generated by the kept ones.
std::vector<Permutation> reduce_to_generators(int n, const std::vector<Permutation>& group) {
  std::vector<Permutation> gens;
  std::set<std::vector<int>> closure;
  closure.insert(Permutation::identity(n).image);
  for (const Permutation& g : group) {
    if (closure.count(g.image)) continue;
    gens.push_back(g);
    // re-close under the enlarged generating set
    std::vector<Permutation> frontier;
    for (const auto& img : closure) frontier.push_back(Permutation{img});
    while (!frontier.empty()) {
      std::vector<Permutation> next_frontier;
      for (const Permutation& f : frontier)
        for (const Permutation& gen : gens) {
          Permutation h = gen.after(f);
          if (closure.insert(h.image).second) next_frontier.push_back(std::move(h));
        }
      frontier = std::move(next_frontier);
    }
  }
  return gens;
}

}  // namespace

std::vector<Permutation> automorphism_generators(const FiniteStructure& s,
                                                 const std::vector<int>& fixed) {
  if (s.universe_size() == 0) return {};
  AutSearch search(s, fixed);
  std::vector<Permutation> all = search.run();
  return reduce_to_generators(s.universe_size(), all);
}

OrbitPartition orbits(const FiniteStructure& s, const std::vector<int>& fixed) {
  const int n = s.universe_size();
  std::vector<Permutation> gens = automorphism_generators(s, fixed);
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  };
  for (const Permutation& g : gens)
    for (int v = 0; v < n; ++v) unite(v, g(v));

  OrbitPartition out;
  out.fixed = fixed;
  std::sort(out.fixed.begin(), out.fixed.end());
  out.fixed.erase(std::unique(out.fixed.begin(), out.fixed.end()), out.fixed.end());
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < n; ++v) groups[find(v)].push_back(v);
  out.orbit_index.assign(static_cast<size_t>(n), -1);
  for (auto& [root, members] : groups) {
    for (int m : members) out.orbit_index[static_cast<size_t>(m)] = static_cast<int>(out.orbits.size());
    out.orbits.push_back(std::move(members));
  }
  return out;
}

std::vector<Permutation> brute_force_automorphisms(const FiniteStructure& s,
                                                   const std::vector<int>& fixed) {
  const int n = s.universe_size();
  if (n > 8)
    throw ResourceLimitError("brute-force automorphism path is limited to universes of size 8");
  std::vector<int> img(static_cast<size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    bool ok = true;
    for (int f : fixed)
      if (img[static_cast<size_t>(f)] != f) {
        ok = false;
        break;
      }
    if (!ok) continue;
    Permutation p{img};
    if (is_automorphism(s, p)) out.push_back(std::move(p));
  } while (std::next_permutation(img.begin(), img.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Permutation> group_closure(int n, const std::vector<Permutation>& gens) {
  std::set<std::vector<int>> seen;
  seen.insert(Permutation::identity(n).image);
  std::vector<Permutation> frontier{Permutation::identity(n)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const Permutation& f : frontier)
      for (const Permutation& g : gens) {
        Permutation h = g.after(f);
        if (static_cast<int64_t>(seen.size()) >= limits().group_size_cap)
          throw ResourceLimitError("group closure exceeded the size cap");
        if (seen.insert(h.image).second) next.push_back(std::move(h));
      }
    frontier = std::move(next);
  }
  std::vector<Permutation> out;
  out.reserve(seen.size());
  for (const auto& img : seen) out.push_back(Permutation{img});
  return out;
}

}  // namespace vcdlab
