#pragma once

#include <memory>
#include <string>
#include <vector>

namespace vcdlab {

/// A term of the formula DSL: a variable or an element constant.
struct Term {
  bool is_constant = false;
  std::string var;  // when !is_constant
  int value = -1;   // when is_constant

  static Term variable(std::string name) { return Term{false, std::move(name), -1}; }
  static Term constant(int v) { return Term{true, {}, v}; }

  bool operator==(const Term& o) const {
    return is_constant == o.is_constant && var == o.var && value == o.value;
  }
};

/// Immutable first-order formula AST. Atoms are relation applications over
/// terms; equality is a separate node; the counting quantifier
/// exists[>=k] is first-class and can be expanded to plain first-order form
/// with expand_counting.
class Formula {
 public:
  enum class Kind { Atom, Eq, Not, And, Or, Implies, Iff, Exists, Forall, CountGE };

  static Formula atom(std::string rel, std::vector<Term> terms);
  static Formula eq(Term a, Term b);
  static Formula negation(Formula f);
  static Formula conjunction(std::vector<Formula> fs);  // n-ary, needs >= 1 member
  static Formula disjunction(std::vector<Formula> fs);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body);
  static Formula count_at_least(int k, std::string var, Formula body);  // k >= 1

  Kind kind() const;
  const std::string& rel() const;
  const std::vector<Term>& terms() const;
  const std::vector<Formula>& children() const;
  const std::string& var() const;
  int count() const;

  /// Free variables, sorted and deduplicated.
  const std::vector<std::string>& free_vars() const;
  /// All variable names occurring free or bound.
  std::vector<std::string> all_vars() const;
  /// Distinct element constants, sorted.
  std::vector<int> constants() const;
  /// Number of distinct element constants (the parameter count).
  int param_count() const { return static_cast<int>(constants().size()); }
  int quantifier_depth() const;

  bool operator==(const Formula& o) const;

  /// Canonical DSL text; parsing it reproduces the AST.
  std::string to_string() const;

  struct Node;
  const Node& node() const { return *node_; }
  const void* id() const { return node_.get(); }

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Replaces free occurrences of `var` by `replacement`. Bound occurrences
/// shadow; substituting a variable that would be captured is rejected.
Formula substitute(const Formula& f, const std::string& var, const Term& replacement);

/// Rewrites every counting quantifier exists[>=k] v. b into k fresh
/// existentials with pairwise-distinctness clauses. Logically equivalent.
Formula expand_counting(const Formula& f);

}  // namespace vcdlab
