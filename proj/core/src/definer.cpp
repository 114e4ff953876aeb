#include "vcdlab/definer.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "vcdlab/errors.hpp"
#include "vcdlab/eval.hpp"
#include "vcdlab/resource.hpp"

namespace vcdlab {

ZeroTypePartition zero_type_partition(const PosetView& p) {
  const FiniteStructure& s = p.structure();
  OrbitPartition orb = orbits(s, {});
  std::vector<int> colors = refine_colors(s, std::vector<int>(static_cast<size_t>(s.universe_size()), 0));
  ZeroTypePartition out;
  out.classes = orb.orbits;
  out.class_index = orb.orbit_index;
  for (const auto& cls : out.classes) {
    const int rep = cls.front();
    out.invariants.push_back({down_set_size(p, rep), up_set_size(p, rep),
                              colors[static_cast<size_t>(rep)],
                              static_cast<long long>(cls.size())});
  }
  return out;
}

AntichainClassReport check_antichain_classes(const PosetView& p) {
  AntichainClassReport rep;
  ZeroTypePartition z = zero_type_partition(p);
  for (const auto& cls : z.classes) {
    for (size_t i = 0; i < cls.size() && rep.classes_are_antichains; ++i)
      for (size_t j = i + 1; j < cls.size(); ++j)
        if (p.comparable(cls[i], cls[j])) {
          rep.classes_are_antichains = false;
          rep.comparable_class_pair = {cls[i], cls[j]};
          break;
        }
    if (!rep.classes_are_antichains) break;
  }
  const int n = p.size();
  for (int a = 0; a < n && rep.downsets_strictly_monotone; ++a)
    for (int b = 0; b < n; ++b)
      if (p.less(a, b) && down_set_size(p, a) >= down_set_size(p, b)) {
        rep.downsets_strictly_monotone = false;
        rep.monotonicity_witness = {a, b};
        break;
      }
  return rep;
}

namespace {

// exact-count predicate: |{z : z rel x, inner(z)}| == k. `inner`, when
// present, must already speak in the counting variable z.
Formula exact_count(const std::string& order_rel, const std::string& x, const std::string& z,
                    bool below, int k, const std::optional<Formula>& inner) {
  auto edge = below ? Formula::atom(order_rel, {Term::variable(z), Term::variable(x)})
                    : Formula::atom(order_rel, {Term::variable(x), Term::variable(z)});
  Formula body = inner ? Formula::conjunction({edge, *inner}) : edge;
  Formula at_least_k1 = Formula::count_at_least(k + 1, z, body);
  if (k == 0) return Formula::negation(std::move(at_least_k1));
  Formula at_least_k = Formula::count_at_least(k, z, body);
  return Formula::conjunction({std::move(at_least_k), Formula::negation(std::move(at_least_k1))});
}

struct ColorRound {
  std::vector<int> color;         // element -> class id of this round
  std::vector<Formula> defining;  // class id -> parameter-free predicate in x
};

}  // namespace

IsolatingFormula isolating_formula(const PosetView& p, const std::vector<int>& cls) {
  const FiniteStructure& s = p.structure();
  const int n = s.universe_size();
  if (cls.empty()) throw std::invalid_argument("isolating_formula: empty class");
  const std::string& rel = p.order_relation();
  const std::string x = "x";
  const std::string z = "z";
  DynBitset target = DynBitset::of(n, cls);

  const int max_rounds = std::max(1, limits().quantifier_depth_cap - 1);
  std::vector<ColorRound> rounds;

  // round 0: exact down/up counts
  {
    ColorRound r;
    r.color.assign(static_cast<size_t>(n), -1);
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> key_of;
    for (int v = 0; v < n; ++v) {
      std::pair<int, int> key{down_set_size(p, v), up_set_size(p, v)};
      auto [it, fresh] = ids.emplace(key, static_cast<int>(ids.size()));
      if (fresh) key_of.push_back(key);
      r.color[static_cast<size_t>(v)] = it->second;
    }
    for (const auto& [down, up] : key_of)
      r.defining.push_back(Formula::conjunction(
          {exact_count(rel, x, z, true, down, std::nullopt),
           exact_count(rel, x, z, false, up, std::nullopt)}));
    rounds.push_back(std::move(r));
  }

  // refine with exact counts against the previous round's classes
  while (static_cast<int>(rounds.size()) < max_rounds) {
    const ColorRound& prev = rounds.back();
    const int prev_classes = static_cast<int>(prev.defining.size());
    ColorRound r;
    r.color.assign(static_cast<size_t>(n), -1);
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> key_of;
    for (int v = 0; v < n; ++v) {
      std::vector<int> key{prev.color[static_cast<size_t>(v)]};
      for (int c = 0; c < prev_classes; ++c) {
        int below = 0, above = 0;
        for (int u = 0; u < n; ++u) {
          if (prev.color[static_cast<size_t>(u)] != c) continue;
          if (p.less(u, v)) ++below;
          if (p.less(v, u)) ++above;
        }
        key.push_back(below);
        key.push_back(above);
      }
      auto [it, fresh] = ids.emplace(key, static_cast<int>(ids.size()));
      if (fresh) key_of.push_back(key);
      r.color[static_cast<size_t>(v)] = it->second;
    }
    if (ids.size() == prev.defining.size()) break;  // stable
    // fresh counting variable per round: the embedded previous-round
    // predicates bind the earlier ones, so renaming x into this one is
    // capture-free
    const std::string zt = "z" + std::to_string(rounds.size());
    for (const auto& key : key_of) {
      std::vector<Formula> parts{prev.defining[static_cast<size_t>(key[0])]};
      for (int c = 0; c < prev_classes; ++c) {
        const Formula inner =
            substitute(prev.defining[static_cast<size_t>(c)], x, Term::variable(zt));
        parts.push_back(
            exact_count(rel, x, zt, true, key[static_cast<size_t>(1 + 2 * c)], inner));
        parts.push_back(
            exact_count(rel, x, zt, false, key[static_cast<size_t>(2 + 2 * c)], inner));
      }
      r.defining.push_back(Formula::conjunction(std::move(parts)));
    }
    rounds.push_back(std::move(r));
  }

  // earliest round whose color class of the representative matches the class
  const int rep = cls.front();
  for (const ColorRound& r : rounds) {
    const int col = r.color[static_cast<size_t>(rep)];
    DynBitset class_set(n);
    for (int v = 0; v < n; ++v)
      if (r.color[static_cast<size_t>(v)] == col) class_set.set(v);
    if (!(class_set == target)) continue;
    Formula f = r.defining[static_cast<size_t>(col)];
    if (!(satisfier_set(s, f, x) == target)) continue;  // honest check of the built formula
    // Greedy conjunct pruning while the satisfier set stays exact. The flat
    // list is walked from the most-refined end, so late refinement rounds are
    // dropped before the plain count invariants.
    if (f.kind() == Formula::Kind::And) {
      std::vector<Formula> parts;
      auto flatten = [&](auto&& self, const Formula& g) -> void {
        if (g.kind() == Formula::Kind::And)
          for (const Formula& ch : g.children()) self(self, ch);
        else
          parts.push_back(g);
      };
      flatten(flatten, f);
      for (int i = static_cast<int>(parts.size()) - 1; i >= 0 && parts.size() > 1; --i) {
        std::vector<Formula> reduced;
        for (int j = 0; j < static_cast<int>(parts.size()); ++j)
          if (j != i) reduced.push_back(parts[static_cast<size_t>(j)]);
        if (satisfier_set(s, Formula::conjunction(reduced), x) == target)
          parts = std::move(reduced);
      }
      f = Formula::conjunction(std::move(parts));
    }
    return {std::move(f), true};
  }

  // over-approximate: the stable color class of the representative
  const ColorRound& last = rounds.back();
  const int col = last.color[static_cast<size_t>(rep)];
  Formula f = last.defining[static_cast<size_t>(col)];
  if (!target.is_subset_of(satisfier_set(s, f, x)))
    throw std::logic_error("isolating formula lost part of its class");
  return {std::move(f), false};
}

namespace {

struct RecurseState {
  const FiniteStructure& s;
  const FormulaSet& phi_set;
  const Formula& phi;
  const std::string& x;
  int c;
  const ParamSet& B;
  std::vector<bool> phi_c;  // classification of c against every B member
  std::vector<DefinerStep> steps;
  int depth = 0;
  bool counting = false;
  std::optional<Formula> formula;

  Formula phi_at(int b_index) const {
    Formula f = phi;
    const auto& member = B[b_index];
    for (size_t k = 0; k < phi_set.param_vars.size(); ++k)
      f = substitute(f, phi_set.param_vars[k], Term::constant(member[k]));
    return f;
  }
};

Formula defining_base(const RecurseState& st, const Formula& psi) {
  return Formula::exists(st.x, Formula::conjunction({psi, st.phi}));
}

void recurse_define(RecurseState& st, const Formula& psi, int d, int depth) {
  // the cardinality bound is recomputed from scratch at every level
  DynBitset sat = satisfier_set(st.s, psi, st.x);
  const int count = sat.count();
  const int bound = (1 << (d + 1)) - 1;
  if (!sat.test(st.c))
    throw std::logic_error("definer: candidate left its own satisfier set");
  if (count > bound)
    throw std::logic_error("definer: cardinality " + std::to_string(count) +
                           " exceeds bound " + std::to_string(bound) + " at depth " +
                           std::to_string(depth));
  st.depth = depth;
  if (count == 1 || d == 0) {
    // sat == {c}: one existential witness carries the whole classification
    st.formula = defining_base(st, psi);
    return;
  }

  Evaluator ev(st.s);
  auto split_size = [&](int b_index, bool positive) {
    Formula test = st.phi_at(b_index);
    int k = 0;
    for (int e = sat.next(0); e >= 0; e = sat.next(e + 1))
      if (ev.eval(test, Env{{st.x, e}}) == positive) ++k;
    return k;
  };

  const int half = 1 << d;
  for (int j = 0; j < st.B.size(); ++j) {  // case 1: shrink along a positive parameter
    if (!st.phi_c[static_cast<size_t>(j)]) continue;
    if (split_size(j, true) <= half - 1) {
      st.steps.push_back({j, st.B[j], 1, depth});
      recurse_define(st, Formula::conjunction({psi, st.phi_at(j)}), d - 1, depth + 1);
      return;
    }
  }
  for (int j = 0; j < st.B.size(); ++j) {  // case 2: shrink along a negative parameter
    if (st.phi_c[static_cast<size_t>(j)]) continue;
    if (split_size(j, false) <= half - 1) {
      st.steps.push_back({j, st.B[j], 2, depth});
      recurse_define(st, Formula::conjunction({psi, Formula::negation(st.phi_at(j))}), d - 1,
                      depth + 1);
      return;
    }
  }
  // case 3: no parameter splits the set, so the classification of any b is
  // exactly "at least 2^d members of the set satisfy phi(.,b)" -- asserted
  // here before emission
  for (int j = 0; j < st.B.size(); ++j)
    if (st.phi_c[static_cast<size_t>(j)] != (split_size(j, true) >= half))
      throw std::logic_error("definer: counting dichotomy failed at parameter " +
                             std::to_string(j));
  st.counting = true;
  st.formula = Formula::count_at_least(half, st.x, Formula::conjunction({psi, st.phi}));
}

}  // namespace

DefinerResult recursive_define(const FiniteStructure& s, const Formula& psi, const FormulaSet& phi,
                             int c, const ParamSet& B, int d) {
  if (phi.formulas.size() != 1)
    throw std::invalid_argument("recursive_define takes a single partitioned formula");
  if (phi.object_vars.size() != 1)
    throw std::invalid_argument("recursive_define supports a single object variable only");
  if (d < 0) throw std::invalid_argument("recursive_define: d must be >= 0");
  if (B.arity != static_cast<int>(phi.param_vars.size()))
    throw std::invalid_argument("recursive_define: parameter arity mismatch");
  const std::string& x = phi.object_vars[0];
  {
    const auto& fv = psi.free_vars();
    if (fv.size() != 1 || fv[0] != x)
      throw std::invalid_argument("recursive_define: psi must have exactly the free variable '" + x +
                                  "'");
  }
  DynBitset sat = satisfier_set(s, psi, x);
  if (!sat.test(c))
    throw std::invalid_argument("recursive_define: c is not in psi(M)");
  const int bound = (1 << (d + 1)) - 1;
  if (sat.count() > bound)
    throw std::invalid_argument("recursive_define: |psi(M)| = " + std::to_string(sat.count()) +
                                " exceeds 2^(d+1)-1 = " + std::to_string(bound));

  RecurseState st{s, phi, phi.formulas[0], x, c, B, {}, {}, 0, false, std::nullopt};
  {
    Evaluator ev(s);
    for (int j = 0; j < B.size(); ++j) {
      Env env{{x, c}};
      for (size_t k = 0; k < phi.param_vars.size(); ++k)
        env.bind(phi.param_vars[k], B[j][k]);
      st.phi_c.push_back(ev.eval(phi.formulas[0], env));
    }
  }
  recurse_define(st, psi, d, 0);

  // replay: the emitted formula must decide phi(x;b) membership for every b
  DefinerResult out{*st.formula, std::move(st.steps), st.depth, st.counting, {}};
  Evaluator ev(s);
  for (int j = 0; j < B.size(); ++j) {
    Env env;
    for (size_t k = 0; k < phi.param_vars.size(); ++k)
      env.bind(phi.param_vars[k], B[j][k]);
    const bool got = ev.eval(out.formula, env);
    out.verdicts.push_back(got);
    if (got != st.phi_c[static_cast<size_t>(j)])
      throw std::logic_error("definer: replay mismatch at parameter index " + std::to_string(j));
  }
  if (static_cast<int>(out.params_used.size()) > d)
    throw std::logic_error("definer: consumed more than d parameters");
  return out;
}

FormulaSet poset_delta(const PosetView& p, bool with_equality) {
  std::vector<Formula> fs;
  fs.push_back(Formula::atom(p.order_relation(), {Term::variable("x"), Term::variable("y")}));
  if (with_equality) fs.push_back(Formula::eq(Term::variable("x"), Term::variable("y")));
  return make_formula_set(std::move(fs));
}

VcdReport vcd_certificate(const PosetView& p, const FormulaSet& delta, const ParamSet& B,
                          std::optional<int> forced_d) {
  const FiniteStructure& s = p.structure();
  VcdReport rep;
  rep.width = width(p);
  rep.d = forced_d.value_or(std::bit_width(static_cast<unsigned>(rep.width)) - 1);
  rep.forced = forced_d.has_value();
  const int class_bound = (1 << (rep.d + 1)) - 1;

  ZeroTypePartition z = zero_type_partition(p);
  std::vector<IsolatingFormula> isolators;
  std::vector<bool> isolator_ready(z.classes.size(), false);
  isolators.reserve(z.classes.size());
  for (size_t i = 0; i < z.classes.size(); ++i)
    isolators.push_back({Formula::eq(Term::variable("x"), Term::variable("x")), false});

  DefinabilityContext ctx(s, delta, B);
  std::vector<TypeTrace> traces = enumerate_types(s, delta, B);
  for (TypeTrace& t : traces) {
    TypeCertificate cert;
    cert.realizer = t.realizers.front();
    const int cls_id = z.class_of(cert.realizer);
    const auto& cls = z.classes[static_cast<size_t>(cls_id)];
    cert.class_size = static_cast<int>(cls.size());

    bool syntactic_done = false;
    if (cert.class_size <= class_bound) {
      if (!isolator_ready[static_cast<size_t>(cls_id)]) {
        isolators[static_cast<size_t>(cls_id)] = isolating_formula(p, cls);
        isolator_ready[static_cast<size_t>(cls_id)] = true;
      }
      const IsolatingFormula& iso = isolators[static_cast<size_t>(cls_id)];
      if (iso.exact) {
        std::vector<DefinerResult> defs;
        bool ok = true;
        for (const Formula& phi : delta.formulas) {
          FormulaSet single = delta;
          single.formulas = {phi};
          DefinerResult r = recursive_define(s, iso.formula, single, cert.realizer, B, rep.d);
          ok = ok && static_cast<int>(r.params_used.size()) <= rep.d;
          defs.push_back(std::move(r));
        }
        if (ok) {
          cert.syntactic = true;
          cert.definitions = std::move(defs);
          cert.certified = true;
          syntactic_done = true;
        }
      }
    }
    if (!syntactic_done) {
      cert.semantic_tuple = ctx.first_def_tuple(t, rep.d);
      cert.certified = cert.semantic_tuple.has_value();
      ++rep.fallback_count;
    }
    rep.all_certified = rep.all_certified && cert.certified;
    cert.trace = std::move(t);
    rep.types.push_back(std::move(cert));
  }
  return rep;
}

}  // namespace vcdlab
