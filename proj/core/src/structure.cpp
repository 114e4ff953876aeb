#include "vcdlab/structure.hpp"

#include <algorithm>
#include <stdexcept>

#include "vcdlab/errors.hpp"
#include "vcdlab/resource.hpp"

namespace vcdlab {

bool Relation::contains(std::span<const int> t) const {
  if (static_cast<int>(t.size()) != arity) return false;
  if (arity == 2) return matrix.test(t[0] * universe + t[1]);
  return std::binary_search(tuples.begin(), tuples.end(), std::vector<int>(t.begin(), t.end()));
}

FiniteStructure::FiniteStructure(
    int universe_size,
    std::vector<std::pair<std::string, std::pair<int, std::vector<std::vector<int>>>>> relations,
    std::vector<std::pair<std::string, int>> labels)
    : n_(universe_size) {
  if (n_ < 0) throw std::invalid_argument("universe size must be non-negative");
  for (auto& [name, decl] : relations) {
    auto& [arity, tuples] = decl;
    if (arity <= 0) throw std::invalid_argument("relation '" + name + "' has non-positive arity");
    if (relations_.count(name))
      throw std::invalid_argument("duplicate relation name '" + name + "'");
    Relation r;
    r.name = name;
    r.arity = arity;
    r.universe = n_;
    for (auto& t : tuples) {
      if (static_cast<int>(t.size()) != arity)
        throw std::invalid_argument("relation '" + name + "': tuple arity mismatch");
      for (int e : t)
        if (e < 0 || e >= n_)
          throw std::invalid_argument("relation '" + name + "': element " + std::to_string(e) +
                                      " outside universe");
    }
    r.tuples = std::move(tuples);
    std::sort(r.tuples.begin(), r.tuples.end());
    r.tuples.erase(std::unique(r.tuples.begin(), r.tuples.end()), r.tuples.end());
    if (arity == 2) {
      r.matrix = DynBitset(n_ * n_);
      for (const auto& t : r.tuples) r.matrix.set(t[0] * n_ + t[1]);
    }
    signature_.emplace_back(name, arity);
    relations_.emplace(name, std::move(r));
  }
  index_to_label_.assign(static_cast<size_t>(n_), {});
  for (auto& [label, idx] : labels) {
    if (idx < 0 || idx >= n_)
      throw std::invalid_argument("label '" + label + "' maps outside the universe");
    if (label_to_index_.count(label))
      throw std::invalid_argument("duplicate label '" + label + "'");
    label_to_index_[label] = idx;
    index_to_label_[static_cast<size_t>(idx)] = label;
  }
}

bool FiniteStructure::has_relation(const std::string& name) const {
  return relations_.count(name) != 0;
}

const Relation& FiniteStructure::relation(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw std::invalid_argument("unknown relation '" + name + "'");
  return it->second;
}

bool FiniteStructure::holds(const std::string& name, std::span<const int> tuple) const {
  const Relation& r = relation(name);
  if (static_cast<int>(tuple.size()) != r.arity)
    throw std::invalid_argument("relation '" + name + "': arity mismatch in query");
  if (r.arity == 2) return r.matrix.test(tuple[0] * n_ + tuple[1]);
  return std::binary_search(r.tuples.begin(), r.tuples.end(),
                            std::vector<int>(tuple.begin(), tuple.end()));
}

std::optional<int> FiniteStructure::element_by_label(const std::string& label) const {
  auto it = label_to_index_.find(label);
  if (it == label_to_index_.end()) return std::nullopt;
  return it->second;
}

const std::string* FiniteStructure::label_of(int element) const {
  if (element < 0 || element >= n_) return nullptr;
  const std::string& l = index_to_label_[static_cast<size_t>(element)];
  return l.empty() ? nullptr : &l;
}

std::string FiniteStructure::display(int element) const {
  if (const std::string* l = label_of(element)) return *l;
  return std::to_string(element);
}

StructureBuilder& StructureBuilder::add_relation(std::string name, int arity,
                                                 std::vector<std::vector<int>> tuples) {
  relations_.emplace_back(std::move(name), std::make_pair(arity, std::move(tuples)));
  return *this;
}

StructureBuilder& StructureBuilder::set_label(int element, std::string label) {
  labels_.emplace_back(std::move(label), element);
  return *this;
}

StructurePtr StructureBuilder::build() {
  return std::make_shared<const FiniteStructure>(n_, std::move(relations_), std::move(labels_));
}

std::vector<std::vector<int>> transitive_closure_pairs(int n,
                                                       const std::vector<std::vector<int>>& pairs) {
  std::vector<DynBitset> row(static_cast<size_t>(n), DynBitset(n));
  for (const auto& p : pairs) row[static_cast<size_t>(p[0])].set(p[1]);
  // Warshall over bit rows
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (row[static_cast<size_t>(i)].test(k)) row[static_cast<size_t>(i)] |= row[static_cast<size_t>(k)];
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = row[static_cast<size_t>(i)].next(0); j >= 0; j = row[static_cast<size_t>(i)].next(j + 1))
      out.push_back({i, j});
  return out;
}

PosetView::PosetView(StructurePtr s, std::string rel)
    : s_(std::move(s)), rel_(std::move(rel)), r_(&s_->relation(rel_)) {}

namespace {

std::string pair_str(const FiniteStructure& s, int a, int b) {
  return "(" + s.display(a) + "," + s.display(b) + ")";
}

}  // namespace

std::optional<std::string> poset_violation(const FiniteStructure& s, const std::string& rel) {
  if (!s.has_relation(rel)) return "no relation named '" + rel + "'";
  const Relation& r = s.relation(rel);
  if (r.arity != 2) return "relation '" + rel + "' is not binary";
  const int n = s.universe_size();
  auto lt = [&](int a, int b) { return r.matrix.test(a * n + b); };
  for (int a = 0; a < n; ++a)
    if (lt(a, a)) return "irreflexivity violated at (" + s.display(a) + "," + s.display(a) + ")";
  for (const auto& t : r.tuples)
    if (lt(t[1], t[0]))
      return "asymmetry violated at " + pair_str(s, t[0], t[1]) + "," + pair_str(s, t[1], t[0]);
  for (const auto& t : r.tuples) {
    const int a = t[0], b = t[1];
    for (int c = 0; c < n; ++c)
      if (lt(b, c) && !lt(a, c))
        return "transitivity violated at " + pair_str(s, a, b) + "," + pair_str(s, b, c) +
               " without " + pair_str(s, a, c);
  }
  return std::nullopt;
}

PosetView validate_poset(StructurePtr s, const std::string& rel) {
  if (auto why = poset_violation(*s, rel)) throw std::invalid_argument(*why);
  return PosetView(std::move(s), rel);
}

namespace {

// Tomita-style max-clique search with greedy coloring bound, used on the
// incomparability graph: a maximum clique there is a maximum antichain.
class MaxCliqueSearch {
 public:
  MaxCliqueSearch(int n, std::vector<DynBitset> adj) : n_(n), adj_(std::move(adj)) {
    nonadj_.reserve(static_cast<size_t>(n_));
    for (int v = 0; v < n_; ++v) {
      DynBitset na(n_);
      for (int u = 0; u < n_; ++u)
        if (u != v && !adj_[static_cast<size_t>(v)].test(u)) na.set(u);
      nonadj_.push_back(std::move(na));
    }
  }

  int run() {
    DynBitset all(n_);
    for (int i = 0; i < n_; ++i) all.set(i);
    std::vector<int> clique;
    expand(all, clique);
    return best_;
  }

 private:
  void expand(const DynBitset& cand, std::vector<int>& clique) {
    if (cand.none()) {
      best_ = std::max(best_, static_cast<int>(clique.size()));
      return;
    }
    // Greedy coloring: each color class is independent, so a clique takes at
    // most one vertex per class. Colors are assigned in ascending order.
    std::vector<int> order;
    std::vector<int> color;
    DynBitset left = cand;
    int c = 0;
    while (left.any()) {
      ++c;
      DynBitset cls = left;
      for (int v = cls.next(0); v >= 0; v = cls.next(v + 1)) {
        order.push_back(v);
        color.push_back(c);
        left.reset(v);
        cls &= nonadj_[static_cast<size_t>(v)];
      }
    }
    DynBitset cand2 = cand;
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      int v = order[static_cast<size_t>(i)];
      if (static_cast<int>(clique.size()) + color[static_cast<size_t>(i)] <= best_) return;
      clique.push_back(v);
      DynBitset next = cand2;
      next &= adj_[static_cast<size_t>(v)];
      expand(next, clique);
      clique.pop_back();
      cand2.reset(v);
    }
  }

  int n_;
  std::vector<DynBitset> adj_;
  std::vector<DynBitset> nonadj_;
  int best_ = 0;
};

}  // namespace

int width(const PosetView& p) {
  const int n = p.size();
  if (n == 0) return 0;
  if (n > limits().width_universe_cap)
    throw ResourceLimitError("width: universe size " + std::to_string(n) +
                             " exceeds cap " + std::to_string(limits().width_universe_cap));
  std::vector<DynBitset> incomp(static_cast<size_t>(n), DynBitset(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && !p.comparable(a, b)) incomp[static_cast<size_t>(a)].set(b);
  return MaxCliqueSearch(n, std::move(incomp)).run();
}

int down_set_size(const PosetView& p, int a) {
  const int n = p.size();
  if (a < 0 || a >= n) throw std::invalid_argument("down_set_size: element outside universe");
  int c = 0;
  for (int x = 0; x < n; ++x)
    if (p.less(x, a)) ++c;
  return c;
}

int up_set_size(const PosetView& p, int a) {
  const int n = p.size();
  if (a < 0 || a >= n) throw std::invalid_argument("up_set_size: element outside universe");
  int c = 0;
  for (int x = 0; x < n; ++x)
    if (p.less(a, x)) ++c;
  return c;
}

bool is_antichain(const PosetView& p, std::span<const int> elements) {
  for (size_t i = 0; i < elements.size(); ++i)
    for (size_t j = i + 1; j < elements.size(); ++j)
      if (elements[i] != elements[j] && p.comparable(elements[i], elements[j])) return false;
  return true;
}

}  // namespace vcdlab
