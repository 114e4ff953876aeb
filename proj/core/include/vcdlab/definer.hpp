#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vcdlab/definability.hpp"
#include "vcdlab/formula.hpp"
#include "vcdlab/structure.hpp"
#include "vcdlab/typespace.hpp"

namespace vcdlab {

/// Partition of the universe into empty-parameter type classes, computed as
/// automorphism orbits (in a finite structure, elements with equal complete
/// types are exactly the automorphic ones). Each class carries an invariant
/// vector: down-set size, up-set size, stable refinement color.
struct ZeroTypePartition {
  std::vector<std::vector<int>> classes;  // ordered by least member
  std::vector<int> class_index;           // element -> class position
  std::vector<std::vector<long long>> invariants;

  int class_of(int element) const { return class_index[static_cast<size_t>(element)]; }
};

ZeroTypePartition zero_type_partition(const PosetView& p);

/// Every empty-parameter type class of a finite poset is an antichain; the
/// check also replays the mechanism behind it, the strict growth of down-set
/// sizes along the order.
struct AntichainClassReport {
  bool classes_are_antichains = true;
  bool downsets_strictly_monotone = true;
  std::optional<std::pair<int, int>> comparable_class_pair;  // witness in one class
  std::optional<std::pair<int, int>> monotonicity_witness;   // a < b with |down a| >= |down b|

  bool holds() const { return classes_are_antichains && downsets_strictly_monotone; }
};

AntichainClassReport check_antichain_classes(const PosetView& p);

/// Parameter-free formula whose satisfier set contains the given class,
/// built from iterated counting invariants (exact down/up counts of the
/// color classes of the previous round). Marked exact when the satisfier
/// set equals the class; over-approximate formulas are rejected by the
/// recursive definer and certificates fall back to the semantic route.
struct IsolatingFormula {
  Formula formula;
  bool exact = false;
};

IsolatingFormula isolating_formula(const PosetView& p, const std::vector<int>& cls);

/// One recursion step of the defining-formula construction: which parameter
/// was consumed, by which case, at which depth.
struct DefinerStep {
  int b_index = -1;
  std::vector<int> b_member;
  int case_id = 0;  // 1: positive split, 2: negative split
  int depth = 0;
};

struct DefinerResult {
  Formula formula;
  std::vector<DefinerStep> params_used;
  int depth = 0;                   // recursion depth reached
  bool counting_emission = false;  // terminated by the threshold-counting form
  std::vector<bool> verdicts;      // replay transcript, one verdict per B member
};

/// Recursive construction of a defining formula for tp_phi(c/B), consuming
/// at most d parameters from B beyond those of psi. Requires c in psi(M) and
/// |psi(M)| <= 2^{d+1}-1; the cardinality is recomputed at every level. The
/// result is replayed against the type before it is returned.
DefinerResult recursive_define(const FiniteStructure& s, const Formula& psi, const FormulaSet& phi,
                             int c, const ParamSet& B, int d);

/// Certificate that every realized type over B is definable with at most
/// d = floor(log2(width)) parameters: the syntactic route runs the recursive
/// definer on an exact class isolator; when the isolator is inexact (or the
/// class is too large for a forced d), the semantic route checks Def(p) via
/// the orbit criterion.
struct TypeCertificate {
  TypeTrace trace;
  int realizer = -1;
  int class_size = 0;
  bool syntactic = false;
  std::vector<DefinerResult> definitions;       // per Delta formula, syntactic route
  std::optional<std::vector<int>> semantic_tuple;  // admissible tuple, semantic route
  bool certified = false;
};

struct VcdReport {
  int width = 0;
  int d = 0;
  bool forced = false;
  std::vector<TypeCertificate> types;
  int fallback_count = 0;  // semantic-only certificates
  bool all_certified = true;
};

VcdReport vcd_certificate(const PosetView& p, const FormulaSet& delta, const ParamSet& B,
                          std::optional<int> forced_d = std::nullopt);

/// Default Delta for poset certificates: { x < y } over the view's order
/// relation, optionally together with x = y.
FormulaSet poset_delta(const PosetView& p, bool with_equality = false);

}  // namespace vcdlab
