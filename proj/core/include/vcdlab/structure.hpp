#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vcdlab/bitset.hpp"

namespace vcdlab {

/// One named relation of a finite structure. Tuples are kept sorted and
/// deduplicated; binary relations additionally carry a row-major bit matrix
/// for O(1) membership tests.
struct Relation {
  std::string name;
  int arity = 0;
  int universe = 0;
  std::vector<std::vector<int>> tuples;
  DynBitset matrix;  // arity == 2 only: bit a*n+b set iff (a,b) in relation

  bool contains(std::span<const int> t) const;
};

/// A finite relational structure. Elements are the indices 0..n-1; optional
/// human-readable labels live alongside and are used only by I/O and the
/// formula DSL. Immutable after construction and safe to share across
/// threads.
class FiniteStructure {
 public:
  FiniteStructure(int universe_size,
                  std::vector<std::pair<std::string, std::pair<int, std::vector<std::vector<int>>>>>
                      relations,
                  std::vector<std::pair<std::string, int>> labels = {});

  int universe_size() const { return n_; }

  /// (name, arity) pairs in declaration order.
  const std::vector<std::pair<std::string, int>>& signature() const { return signature_; }

  bool has_relation(const std::string& name) const;
  const Relation& relation(const std::string& name) const;
  bool holds(const std::string& name, std::span<const int> tuple) const;

  std::optional<int> element_by_label(const std::string& label) const;
  const std::string* label_of(int element) const;
  const std::map<std::string, int>& labels() const { return label_to_index_; }

  /// Display form of an element: its label if present, else the index.
  std::string display(int element) const;

 private:
  int n_;
  std::vector<std::pair<std::string, int>> signature_;
  std::map<std::string, Relation> relations_;
  std::vector<std::string> index_to_label_;
  std::map<std::string, int> label_to_index_;
};

using StructurePtr = std::shared_ptr<const FiniteStructure>;

/// Incremental construction helper; build() validates and freezes.
class StructureBuilder {
 public:
  explicit StructureBuilder(int universe_size) : n_(universe_size) {}

  StructureBuilder& add_relation(std::string name, int arity, std::vector<std::vector<int>> tuples);
  StructureBuilder& set_label(int element, std::string label);

  StructurePtr build();

 private:
  int n_;
  std::vector<std::pair<std::string, std::pair<int, std::vector<std::vector<int>>>>> relations_;
  std::vector<std::pair<std::string, int>> labels_;
};

/// Reflexive-free transitive closure of the given pairs over universe n.
std::vector<std::vector<int>> transitive_closure_pairs(int n, const std::vector<std::vector<int>>& pairs);

/// A binary relation of a structure read as a strict partial order.
/// Construction goes through validate_poset, which checks irreflexivity,
/// transitivity and asymmetry.
class PosetView {
 public:
  const FiniteStructure& structure() const { return *s_; }
  const StructurePtr& share() const { return s_; }
  const std::string& order_relation() const { return rel_; }
  int size() const { return s_->universe_size(); }

  bool less(int a, int b) const { return r_->matrix.test(a * s_->universe_size() + b); }
  bool comparable(int a, int b) const { return less(a, b) || less(b, a); }

  friend PosetView validate_poset(StructurePtr s, const std::string& rel);

 private:
  PosetView(StructurePtr s, std::string rel);

  StructurePtr s_;
  std::string rel_;
  const Relation* r_;
};

/// First poset-axiom violation of the named binary relation, or nullopt if
/// it is a strict partial order. Meant for property tests; validate_poset
/// throws with the same message.
std::optional<std::string> poset_violation(const FiniteStructure& s, const std::string& rel);

/// Returns a PosetView iff irreflexivity, transitivity and asymmetry hold;
/// throws std::invalid_argument naming the first violating pair/triple.
PosetView validate_poset(StructurePtr s, const std::string& rel);

/// Maximum size of a pairwise-incomparable subset. Exact branch-and-bound
/// over cliques of the incomparability graph; aborts via ResourceLimitError
/// above the configured universe cap.
int width(const PosetView& p);

/// |{x : x < a}|.
int down_set_size(const PosetView& p, int a);

/// |{x : a < x}|.
int up_set_size(const PosetView& p, int a);

/// True iff no two distinct members of the set are comparable.
bool is_antichain(const PosetView& p, std::span<const int> elements);

}  // namespace vcdlab
