#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vcdlab/bitset.hpp"
#include "vcdlab/formula.hpp"
#include "vcdlab/structure.hpp"

namespace vcdlab {

/// Variable assignment. Tiny sorted vector; copies are cheap at the sizes
/// the evaluator produces.
class Env {
 public:
  Env() = default;
  Env(std::initializer_list<std::pair<std::string, int>> bindings) {
    for (auto& b : bindings) bind(b.first, b.second);
  }

  std::optional<int> lookup(const std::string& var) const;
  void bind(const std::string& var, int value);
  Env extended(const std::string& var, int value) const;

  const std::vector<std::pair<std::string, int>>& bindings() const { return v_; }

 private:
  std::vector<std::pair<std::string, int>> v_;  // sorted by name
};

/// Exact Tarskian evaluation over a finite structure. Quantifier nodes are
/// memoized per (node, restriction of the environment to the node's free
/// variables); the counting quantifier short-circuits at its threshold.
/// Formulas above the configured quantifier-depth cap are rejected.
class Evaluator {
 public:
  explicit Evaluator(const FiniteStructure& s) : s_(s) {}

  bool eval(const Formula& f, const Env& env);

 private:
  bool run(const Formula& f, const Env& env);
  int value_of(const Term& t, const Env& env) const;

  const FiniteStructure& s_;
  std::unordered_map<const void*, std::unordered_map<std::string, bool>> memo_;
};

bool eval(const FiniteStructure& s, const Formula& f, const Env& env);

/// {a : s |= f[free_var := a]}. The formula must have exactly this one free
/// variable.
DynBitset satisfier_set(const FiniteStructure& s, const Formula& f, const std::string& free_var);

std::vector<int> satisfier_elements(const FiniteStructure& s, const Formula& f,
                                    const std::string& free_var);

}  // namespace vcdlab
