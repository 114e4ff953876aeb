#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "vcdlab/bitset.hpp"
#include "vcdlab/symmetry.hpp"
#include "vcdlab/typespace.hpp"

namespace vcdlab {

/// Outcome of the orbit criterion for one parameter tuple: a type is
/// definable over b-bar iff its classification is constant on every orbit of
/// B under the automorphisms fixing b-bar pointwise. A negative verdict
/// carries a replayable witness.
struct DefinabilityVerdict {
  std::vector<int> tuple;  // chosen parameters, as indices into B
  bool definable = false;
  std::vector<std::vector<int>> b_orbits;  // orbit partition of B indices under the stabilizer

  struct Violation {
    Permutation sigma;  // fixes the tuple pointwise, maps B[b_from] to B[b_to]
    int b_from = -1;
    int b_to = -1;
    int formula = -1;  // the trace classifies (formula, b_from) and (formula, b_to) differently
  };
  std::optional<Violation> violation;
};

/// Shared stabilizer/orbit cache for one (structure, Delta, B) workload.
/// Verdicts for tuples with the same underlying element set reuse the same
/// orbit computation.
class DefinabilityContext {
 public:
  DefinabilityContext(const FiniteStructure& s, const FormulaSet& delta, const ParamSet& B);

  /// Worker cap for the stabilizer precomputation inside def_tuples. The
  /// stabilizer computations are independent per fixed-element set; results
  /// are merged in a deterministic order, so the output never depends on
  /// the job count.
  void set_jobs(int jobs) { jobs_ = jobs < 1 ? 1 : jobs; }

  DefinabilityVerdict is_definable_over(const TypeTrace& p, const std::vector<int>& tuple);

  /// Def(p) at tuple length d: every admissible tuple in B^d, in
  /// lexicographic order. d = 0 checks the single empty tuple; an empty B
  /// leaves nothing to define, so the empty tuple stands for any d.
  std::vector<std::vector<int>> def_tuples(const TypeTrace& p, int d);

  /// First admissible tuple in lexicographic order, if any.
  std::optional<std::vector<int>> first_def_tuple(const TypeTrace& p, int d);

  const FiniteStructure& structure() const { return s_; }
  const ParamSet& B() const { return B_; }

 private:
  struct OrbitData {
    std::vector<std::vector<int>> b_orbits;   // partition of B indices
    std::vector<int> orbit_of;                // B index -> orbit id
    std::vector<Permutation> witness;         // B index -> map from orbit root member
  };

  std::vector<int> fixed_set_of(const std::vector<int>& tuple) const;
  OrbitData compute_orbit_data(const std::vector<int>& fixed) const;
  const OrbitData& orbit_data(const std::vector<int>& tuple);
  void precompute_for_length(int d);
  std::optional<DefinabilityVerdict::Violation> find_violation(const TypeTrace& p,
                                                               const OrbitData& od) const;

  const FiniteStructure& s_;
  FormulaSet delta_;
  ParamSet B_;
  int jobs_ = 1;
  std::map<std::vector<int>, OrbitData> cache_;  // keyed by sorted distinct fixed elements
};

/// Independent replay of a negative verdict: sigma must be an automorphism,
/// fix the chosen tuple pointwise, carry one parameter to the other, and the
/// trace must classify the pair differently.
bool replay_violation(const FiniteStructure& s, const ParamSet& B, const TypeTrace& p,
                      const DefinabilityVerdict& v);

/// One-shot convenience wrappers over DefinabilityContext.
DefinabilityVerdict is_definable_over(const FiniteStructure& s, const TypeTrace& p,
                                      const std::vector<int>& tuple, const FormulaSet& delta,
                                      const ParamSet& B);
std::vector<std::vector<int>> def_tuples(const FiniteStructure& s, const TypeTrace& p, int d,
                                         const FormulaSet& delta, const ParamSet& B);

/// A type together with its admissible parameter tuples.
struct TypeDefinability {
  TypeTrace trace;
  std::vector<std::vector<int>> def_set;
};

/// Minimal max-load over assignments of types to admissible tuples: any
/// uniform-definability witness with n schemes induces such an assignment
/// with load <= n, so this is a lower bound on the scheme count. Exact via
/// binary search on the load with a max-flow feasibility check.
struct SchemeBound {
  int d = 0;
  std::optional<int> lower_bound;  // nullopt: some Def(p) is empty (no bound is finite)
  std::vector<int> assignment;     // per type, index into its def_set (when feasible)
};

SchemeBound min_scheme_count(const std::vector<TypeDefinability>& types, int d);

/// Least d such that every nonempty intersection of d+1 distinct family
/// members already equals the intersection of d of them. Witnesses record,
/// for each (d+1)-subset, which member can be dropped.
struct BreadthWitness {
  std::vector<int> subset;    // indices into the deduplicated family, size d+1
  std::vector<int> collapse;  // size-d subset with the same intersection
};

struct BreadthReport {
  std::vector<DynBitset> family;  // deduplicated, lexicographically sorted
  std::optional<int> breadth;     // nullopt only for an empty family
  std::vector<BreadthWitness> witnesses;
};

BreadthReport breadth(const std::vector<DynBitset>& family);

/// Breadth-based semantic defining scheme for a realized type: picks at most
/// d positively-classified parameters whose satisfier sets intersect to the
/// same core as all of them, then classifies (formula, b) by whether the
/// core sits inside that satisfier set. Agreement with the trace is
/// replayed; a miss falsifies the breadth precondition.
struct BreadthScheme {
  bool found_core = false;
  std::vector<std::pair<int, int>> chosen;  // positive (formula index, B index) pairs, <= d
  DynBitset core;
  std::vector<bool> verdicts;  // flattened formula-major, i*|B|+j
  bool agrees = false;
};

BreadthScheme breadth_define(const FiniteStructure& s, const FormulaSet& delta, const ParamSet& B,
                             const TypeTrace& p, int d);

/// Budgeted search for a defining formula phi_#(y) with constants among
/// `params`, over boolean combinations of order/equality atoms and a fixed
/// family of quantified atom shapes. Finding one certifies definability;
/// absence proves nothing. Single-element parameters only.
std::optional<Formula> bounded_formula_search(const FiniteStructure& s, const TypeTrace& p,
                                              const std::vector<int>& params,
                                              const FormulaSet& delta, const ParamSet& B,
                                              int depth_budget, int formula_index = 0);

}  // namespace vcdlab
