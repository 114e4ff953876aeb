#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vcdlab/bitset.hpp"
#include "vcdlab/eval.hpp"
#include "vcdlab/formula.hpp"
#include "vcdlab/structure.hpp"

namespace vcdlab {

/// An ordered finite parameter set B: tuples from the universe, all of the
/// same arity |y|, pairwise distinct.
struct ParamSet {
  int arity = 1;
  std::vector<std::vector<int>> members;

  static ParamSet from_elements(std::vector<int> elements);
  static ParamSet from_tuples(int arity, std::vector<std::vector<int>> tuples);

  int size() const { return static_cast<int>(members.size()); }
  const std::vector<int>& operator[](int j) const { return members[static_cast<size_t>(j)]; }
  std::optional<int> index_of(const std::vector<int>& member) const;
};

/// A partitioned formula family: every member shares the object variables x
/// and the parameter variables y.
struct FormulaSet {
  std::vector<Formula> formulas;
  std::vector<std::string> object_vars = {"x"};
  std::vector<std::string> param_vars = {"y"};
};

/// Validates that each formula's free variables lie inside x and y.
FormulaSet make_formula_set(std::vector<Formula> formulas,
                            std::vector<std::string> object_vars = {"x"},
                            std::vector<std::string> param_vars = {"y"});

/// The trace of a complete Delta-type over B: the positive (formula,
/// parameter) pairs as a bitset (bit i*|B|+j), plus the realizers collected
/// during enumeration. Equality and ordering are on the bitset.
struct TypeTrace {
  int formula_count = 0;
  int b_size = 0;
  DynBitset positive;
  std::vector<int> realizers;

  bool positive_at(int formula, int b_index) const {
    return positive.test(formula * b_size + b_index);
  }
  bool operator==(const TypeTrace& o) const { return positive == o.positive; }
};

/// tp_Delta(a / B): classifies every pair (formula, parameter tuple).
TypeTrace realize_type(const FiniteStructure& s, const FormulaSet& delta, std::span<const int> a,
                       const ParamSet& B);

/// Distinct realized traces of elements of `over` (default: the whole
/// universe), each carrying its sorted realizer set. Output is ordered
/// lexicographically on the trace bitsets. Only |x| = 1 is supported here.
std::vector<TypeTrace> enumerate_types(const FiniteStructure& s, const FormulaSet& delta,
                                       const ParamSet& B,
                                       const std::optional<std::vector<int>>& over = std::nullopt);

}  // namespace vcdlab
