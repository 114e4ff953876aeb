#include "vcdlab/definability.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

#include "vcdlab/errors.hpp"
#include "vcdlab/resource.hpp"

namespace vcdlab {

DefinabilityContext::DefinabilityContext(const FiniteStructure& s, const FormulaSet& delta,
                                         const ParamSet& B)
    : s_(s), delta_(delta), B_(B) {}

std::vector<int> DefinabilityContext::fixed_set_of(const std::vector<int>& tuple) const {
  std::vector<int> fixed;
  for (int j : tuple) {
    const auto& member = B_[j];
    fixed.insert(fixed.end(), member.begin(), member.end());
  }
  std::sort(fixed.begin(), fixed.end());
  fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
  return fixed;
}

DefinabilityContext::OrbitData DefinabilityContext::compute_orbit_data(
    const std::vector<int>& fixed) const {
  std::vector<Permutation> gens = automorphism_generators(s_, fixed);

  // Orbits of parameter tuples under the stabilizer, with a witness
  // permutation per reached tuple (composed along the BFS path from the
  // orbit root). BFS covers the whole orbit in tuple space, so members of B
  // in one orbit are found even when intermediate tuples lie outside B.
  OrbitData od;
  od.orbit_of.assign(static_cast<size_t>(B_.size()), -1);
  od.witness.assign(static_cast<size_t>(B_.size()), Permutation{});
  std::map<std::vector<int>, Permutation> reached;
  for (int root = 0; root < B_.size(); ++root) {
    if (od.orbit_of[static_cast<size_t>(root)] >= 0) continue;
    const int orbit_id = static_cast<int>(od.b_orbits.size());
    od.b_orbits.emplace_back();
    std::vector<std::vector<int>> frontier{B_[root]};
    reached.clear();
    reached.emplace(B_[root], Permutation::identity(s_.universe_size()));
    while (!frontier.empty()) {
      std::vector<std::vector<int>> next;
      for (const auto& t : frontier)
        for (const Permutation& g : gens) {
          std::vector<int> u = g.apply(t);
          if (reached.count(u)) continue;
          Permutation via = g.after(reached.at(t));
          reached.emplace(u, std::move(via));
          next.push_back(std::move(u));
        }
      frontier = std::move(next);
    }
    for (int j = root; j < B_.size(); ++j) {
      if (od.orbit_of[static_cast<size_t>(j)] >= 0) continue;
      auto hit = reached.find(B_[j]);
      if (hit == reached.end()) continue;
      od.orbit_of[static_cast<size_t>(j)] = orbit_id;
      od.witness[static_cast<size_t>(j)] = hit->second;
      od.b_orbits.back().push_back(j);
    }
  }
  return od;
}

const DefinabilityContext::OrbitData& DefinabilityContext::orbit_data(
    const std::vector<int>& tuple) {
  std::vector<int> fixed = fixed_set_of(tuple);
  auto it = cache_.find(fixed);
  if (it != cache_.end()) return it->second;
  OrbitData od = compute_orbit_data(fixed);
  return cache_.emplace(std::move(fixed), std::move(od)).first->second;
}

void DefinabilityContext::precompute_for_length(int d) {
  // distinct fixed sets arising from tuples in B^d: the subsets of B of size
  // <= d, flattened to element sets
  std::vector<std::vector<int>> todo;
  std::set<std::vector<int>> seen;
  std::vector<int> pick;
  auto enumerate = [&](auto&& self, int from, int remaining) -> void {
    {
      std::vector<int> fixed = fixed_set_of(pick);
      if (!cache_.count(fixed) && seen.insert(fixed).second) todo.push_back(std::move(fixed));
    }
    if (remaining == 0) return;
    for (int j = from; j < B_.size(); ++j) {
      pick.push_back(j);
      self(self, j, remaining - 1);
      pick.pop_back();
    }
  };
  enumerate(enumerate, 0, d);
  if (todo.size() < 2) {
    for (auto& fixed : todo) cache_.emplace(fixed, compute_orbit_data(fixed));
    return;
  }
  std::vector<OrbitData> results(todo.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= todo.size()) return;
      results[i] = compute_orbit_data(todo[i]);
    }
  };
  std::vector<std::thread> pool;
  const int threads = std::min<int>(jobs_, static_cast<int>(todo.size()));
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (size_t i = 0; i < todo.size(); ++i)
    cache_.emplace(std::move(todo[i]), std::move(results[i]));
}

std::optional<DefinabilityVerdict::Violation> DefinabilityContext::find_violation(
    const TypeTrace& p, const OrbitData& od) const {
  for (const auto& orbit : od.b_orbits) {
    if (orbit.size() < 2) continue;
    for (int i = 0; i < static_cast<int>(delta_.formulas.size()); ++i) {
      const int j0 = orbit.front();
      const bool v0 = p.positive_at(i, j0);
      for (size_t k = 1; k < orbit.size(); ++k) {
        const int j = orbit[k];
        if (p.positive_at(i, j) == v0) continue;
        DefinabilityVerdict::Violation viol;
        viol.b_from = j0;
        viol.b_to = j;
        viol.formula = i;
        viol.sigma = od.witness[static_cast<size_t>(j)].after(
            od.witness[static_cast<size_t>(j0)].inverse());
        return viol;
      }
    }
  }
  return std::nullopt;
}

DefinabilityVerdict DefinabilityContext::is_definable_over(const TypeTrace& p,
                                                           const std::vector<int>& tuple) {
  for (int j : tuple)
    if (j < 0 || j >= B_.size())
      throw std::invalid_argument("is_definable_over: tuple entry is not a B index");
  if (p.b_size != B_.size() ||
      p.formula_count != static_cast<int>(delta_.formulas.size()))
    throw std::invalid_argument("is_definable_over: trace shape does not match (Delta, B)");
  const OrbitData& od = orbit_data(tuple);
  DefinabilityVerdict v;
  v.tuple = tuple;
  v.b_orbits = od.b_orbits;
  v.violation = find_violation(p, od);
  v.definable = !v.violation.has_value();
  return v;
}

std::vector<std::vector<int>> DefinabilityContext::def_tuples(const TypeTrace& p, int d) {
  if (d < 0) throw std::invalid_argument("def_tuples: d must be >= 0");
  if (B_.size() == 0) return {{}};  // nothing to define over an empty B: the empty tuple stands
  double total = 1;
  for (int k = 0; k < d; ++k) total *= B_.size();
  if (total > static_cast<double>(limits().def_tuple_cap))
    throw ResourceLimitError("def_tuples: |B|^d exceeds the tuple cap");
  if (jobs_ > 1) precompute_for_length(d);

  std::vector<std::vector<int>> out;
  std::vector<int> tuple(static_cast<size_t>(d), 0);
  while (true) {
    const OrbitData& od = orbit_data(tuple);
    if (!find_violation(p, od)) out.push_back(tuple);
    // lexicographic increment
    int pos = d - 1;
    while (pos >= 0 && tuple[static_cast<size_t>(pos)] == B_.size() - 1) {
      tuple[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++tuple[static_cast<size_t>(pos)];
  }
  return out;
}

std::optional<std::vector<int>> DefinabilityContext::first_def_tuple(const TypeTrace& p, int d) {
  if (d < 0) throw std::invalid_argument("first_def_tuple: d must be >= 0");
  if (B_.size() == 0) return std::vector<int>{};
  std::vector<int> tuple(static_cast<size_t>(d), 0);
  while (true) {
    const OrbitData& od = orbit_data(tuple);
    if (!find_violation(p, od)) return tuple;
    int pos = d - 1;
    while (pos >= 0 && tuple[static_cast<size_t>(pos)] == B_.size() - 1) {
      tuple[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return std::nullopt;
    ++tuple[static_cast<size_t>(pos)];
  }
}

bool replay_violation(const FiniteStructure& s, const ParamSet& B, const TypeTrace& p,
                      const DefinabilityVerdict& v) {
  if (v.definable || !v.violation) return false;
  const auto& viol = *v.violation;
  if (!is_automorphism(s, viol.sigma)) return false;
  for (int j : v.tuple)
    for (int e : B[j])
      if (viol.sigma(e) != e) return false;
  if (viol.sigma.apply(B[viol.b_from]) != B[viol.b_to]) return false;
  return p.positive_at(viol.formula, viol.b_from) != p.positive_at(viol.formula, viol.b_to);
}

DefinabilityVerdict is_definable_over(const FiniteStructure& s, const TypeTrace& p,
                                      const std::vector<int>& tuple, const FormulaSet& delta,
                                      const ParamSet& B) {
  DefinabilityContext ctx(s, delta, B);
  return ctx.is_definable_over(p, tuple);
}

std::vector<std::vector<int>> def_tuples(const FiniteStructure& s, const TypeTrace& p, int d,
                                         const FormulaSet& delta, const ParamSet& B) {
  DefinabilityContext ctx(s, delta, B);
  return ctx.def_tuples(p, d);
}

namespace {

// Dinic max-flow on a tiny layered network; enough for the assignment
// feasibility checks here.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : head_(static_cast<size_t>(nodes), -1) {}

  void add_edge(int from, int to, int cap) {
    edges_.push_back({to, head_[static_cast<size_t>(from)], cap});
    head_[static_cast<size_t>(from)] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({from, head_[static_cast<size_t>(to)], 0});
    head_[static_cast<size_t>(to)] = static_cast<int>(edges_.size()) - 1;
  }

  int run(int s, int t) {
    int flow = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      while (int pushed = dfs(s, t, 1 << 30)) flow += pushed;
    }
    return flow;
  }

  int edge_flow(int idx) const { return edges_[static_cast<size_t>(2 * idx + 1)].cap; }

 private:
  struct Edge {
    int to, next, cap;
  };

  bool bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    level_[static_cast<size_t>(s)] = 0;
    std::vector<int> q{s};
    for (size_t qi = 0; qi < q.size(); ++qi) {
      int v = q[qi];
      for (int e = head_[static_cast<size_t>(v)]; e >= 0; e = edges_[static_cast<size_t>(e)].next)
        if (edges_[static_cast<size_t>(e)].cap > 0 &&
            level_[static_cast<size_t>(edges_[static_cast<size_t>(e)].to)] < 0) {
          level_[static_cast<size_t>(edges_[static_cast<size_t>(e)].to)] =
              level_[static_cast<size_t>(v)] + 1;
          q.push_back(edges_[static_cast<size_t>(e)].to);
        }
    }
    return level_[static_cast<size_t>(t)] >= 0;
  }

  int dfs(int v, int t, int limit) {
    if (v == t) return limit;
    for (int& e = iter_[static_cast<size_t>(v)]; e >= 0; e = edges_[static_cast<size_t>(e)].next) {
      Edge& ed = edges_[static_cast<size_t>(e)];
      if (ed.cap <= 0 || level_[static_cast<size_t>(ed.to)] != level_[static_cast<size_t>(v)] + 1)
        continue;
      int pushed = dfs(ed.to, t, std::min(limit, ed.cap));
      if (pushed > 0) {
        ed.cap -= pushed;
        edges_[static_cast<size_t>(e ^ 1)].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<int> iter_;
  std::vector<int> level_;
  std::vector<Edge> edges_;
};

}  // namespace

SchemeBound min_scheme_count(const std::vector<TypeDefinability>& types, int d) {
  SchemeBound out;
  out.d = d;
  const int t = static_cast<int>(types.size());
  if (t == 0) {
    out.lower_bound = 0;
    return out;
  }
  for (const TypeDefinability& ty : types)
    if (ty.def_set.empty()) return out;  // infeasible: lower_bound stays empty

  // collect the distinct tuples
  std::map<std::vector<int>, int> tuple_id;
  std::vector<std::vector<std::pair<int, int>>> choices(static_cast<size_t>(t));
  for (int i = 0; i < t; ++i)
    for (const auto& tup : types[static_cast<size_t>(i)].def_set) {
      auto [it, fresh] = tuple_id.emplace(tup, static_cast<int>(tuple_id.size()));
      (void)fresh;
      choices[static_cast<size_t>(i)].push_back({it->second, 0});
    }
  const int m = static_cast<int>(tuple_id.size());

  auto feasible = [&](int load, std::vector<int>* assignment) {
    // nodes: 0 source, 1..t types, t+1..t+m tuples, t+m+1 sink
    MaxFlow f(t + m + 2);
    const int sink = t + m + 1;
    std::vector<std::vector<int>> type_edge(static_cast<size_t>(t));
    int edge_counter = 0;
    for (int i = 0; i < t; ++i) {
      f.add_edge(0, 1 + i, 1);
      ++edge_counter;
    }
    for (int i = 0; i < t; ++i)
      for (auto& [tid, slot] : choices[static_cast<size_t>(i)]) {
        slot = edge_counter++;
        f.add_edge(1 + i, 1 + t + tid, 1);
      }
    for (int j = 0; j < m; ++j) {
      f.add_edge(1 + t + j, sink, load);
      ++edge_counter;
    }
    if (f.run(0, sink) != t) return false;
    if (assignment) {
      assignment->assign(static_cast<size_t>(t), -1);
      for (int i = 0; i < t; ++i)
        for (size_t k = 0; k < choices[static_cast<size_t>(i)].size(); ++k)
          if (f.edge_flow(choices[static_cast<size_t>(i)][k].second) > 0)
            (*assignment)[static_cast<size_t>(i)] = static_cast<int>(k);
    }
    return true;
  };

  int lo = 1, hi = t;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (feasible(mid, nullptr))
      hi = mid;
    else
      lo = mid + 1;
  }
  std::vector<int> assignment;
  feasible(lo, &assignment);
  out.lower_bound = lo;
  out.assignment = std::move(assignment);
  return out;
}

BreadthReport breadth(const std::vector<DynBitset>& family_in) {
  BreadthReport out;
  out.family = family_in;
  std::sort(out.family.begin(), out.family.end(),
            [](const DynBitset& a, const DynBitset& b) { return a.lex_less(b); });
  out.family.erase(std::unique(out.family.begin(), out.family.end()), out.family.end());
  const int m = static_cast<int>(out.family.size());
  if (m == 0) return out;  // breadth undefined for an empty family

  for (int d = 1; d <= m; ++d) {
    std::vector<BreadthWitness> witnesses;
    bool ok = true;
    if (d + 1 <= m) {
      std::vector<int> idx(static_cast<size_t>(d + 1));
      for (int i = 0; i <= d; ++i) idx[static_cast<size_t>(i)] = i;
      while (ok) {
        DynBitset inter = out.family[static_cast<size_t>(idx[0])];
        for (int i = 1; i <= d; ++i) inter &= out.family[static_cast<size_t>(idx[static_cast<size_t>(i)])];
        if (inter.any()) {
          int drop = -1;
          for (int skip = 0; skip <= d && drop < 0; ++skip) {
            DynBitset sub = skip == 0 ? out.family[static_cast<size_t>(idx[1])]
                                      : out.family[static_cast<size_t>(idx[0])];
            for (int i = 0; i <= d; ++i) {
              if (i == skip) continue;
              sub &= out.family[static_cast<size_t>(idx[static_cast<size_t>(i)])];
            }
            if (sub == inter) drop = skip;
          }
          if (drop < 0) {
            ok = false;
            break;
          }
          BreadthWitness w;
          w.subset = idx;
          for (int i = 0; i <= d; ++i)
            if (i != drop) w.collapse.push_back(idx[static_cast<size_t>(i)]);
          witnesses.push_back(std::move(w));
        }
        // next (d+1)-combination
        int pos = d;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == m - (d + 1) + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (int i = pos + 1; i <= d; ++i) idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
      }
    }
    if (ok) {
      out.breadth = d;
      out.witnesses = std::move(witnesses);
      return out;
    }
  }
  out.breadth = m;  // unreachable: d = m is vacuously good
  return out;
}

namespace {

DynBitset member_satisfier(const FiniteStructure& s, const FormulaSet& delta, int formula,
                           const std::vector<int>& member) {
  Formula f = delta.formulas[static_cast<size_t>(formula)];
  for (size_t k = 0; k < delta.param_vars.size(); ++k)
    f = substitute(f, delta.param_vars[k], Term::constant(member[k]));
  return satisfier_set(s, f, delta.object_vars[0]);
}

}  // namespace

BreadthScheme breadth_define(const FiniteStructure& s, const FormulaSet& delta, const ParamSet& B,
                             const TypeTrace& p, int d) {
  if (delta.object_vars.size() != 1)
    throw std::invalid_argument("breadth_define supports a single object variable only");
  const int n = s.universe_size();
  const int fc = static_cast<int>(delta.formulas.size());

  std::vector<std::vector<DynBitset>> sat(static_cast<size_t>(fc));
  for (int i = 0; i < fc; ++i)
    for (int j = 0; j < B.size(); ++j)
      sat[static_cast<size_t>(i)].push_back(member_satisfier(s, delta, i, B[j]));

  std::vector<std::pair<int, int>> positives;
  for (int i = 0; i < fc; ++i)
    for (int j = 0; j < B.size(); ++j)
      if (p.positive_at(i, j)) positives.push_back({i, j});

  DynBitset everything(n);
  for (int a = 0; a < n; ++a) everything.set(a);
  DynBitset target = everything;
  for (auto& [i, j] : positives) target &= sat[static_cast<size_t>(i)][static_cast<size_t>(j)];

  BreadthScheme out;
  out.core = everything;

  // smallest subset of the positive pairs whose intersection equals the full
  // positive intersection; sizes 0..d, lexicographic within a size
  const int pcount = static_cast<int>(positives.size());
  for (int size = 0; size <= std::min(d, pcount) && !out.found_core; ++size) {
    std::vector<int> idx(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
      DynBitset inter = everything;
      for (int i : idx) inter &= sat[static_cast<size_t>(positives[static_cast<size_t>(i)].first)]
                                    [static_cast<size_t>(positives[static_cast<size_t>(i)].second)];
      if (inter == target) {
        out.found_core = true;
        out.core = inter;
        for (int i : idx) out.chosen.push_back(positives[static_cast<size_t>(i)]);
        break;
      }
      if (size == 0) break;
      int pos = size - 1;
      while (pos >= 0 && idx[static_cast<size_t>(pos)] == pcount - size + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<size_t>(pos)];
      for (int i = pos + 1; i < size; ++i) idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
    }
  }
  if (!out.found_core) return out;  // falsifies the breadth <= d precondition

  out.verdicts.assign(static_cast<size_t>(fc * B.size()), false);
  bool agrees = true;
  for (int i = 0; i < fc; ++i)
    for (int j = 0; j < B.size(); ++j) {
      const bool verdict = out.core.is_subset_of(sat[static_cast<size_t>(i)][static_cast<size_t>(j)]);
      out.verdicts[static_cast<size_t>(i * B.size() + j)] = verdict;
      if (verdict != p.positive_at(i, j)) agrees = false;
    }
  out.agrees = agrees;
  return out;
}

std::optional<Formula> bounded_formula_search(const FiniteStructure& s, const TypeTrace& p,
                                              const std::vector<int>& params,
                                              const FormulaSet& delta, const ParamSet& B,
                                              int depth_budget, int formula_index) {
  if (B.arity != 1)
    throw std::invalid_argument("bounded_formula_search supports single-element parameters only");
  if (depth_budget < 1) throw std::invalid_argument("depth budget must be >= 1");
  const std::string& y = delta.param_vars[0];

  std::vector<bool> target(static_cast<size_t>(B.size()));
  for (int j = 0; j < B.size(); ++j) target[static_cast<size_t>(j)] = p.positive_at(formula_index, j);

  // candidate pool keyed by verdict vector on B
  std::map<std::vector<bool>, Formula> pool;
  std::vector<std::vector<bool>> order;  // insertion order for deterministic combination
  Evaluator ev(s);
  auto verdicts_of = [&](const Formula& f) {
    std::vector<bool> v(static_cast<size_t>(B.size()));
    for (int j = 0; j < B.size(); ++j) v[static_cast<size_t>(j)] = ev.eval(f, Env{{y, B[j][0]}});
    return v;
  };
  auto offer = [&](const Formula& f) {
    auto v = verdicts_of(f);
    if (pool.emplace(v, f).second) order.push_back(v);
    return v == target;
  };

  const std::string z = y == "z" ? "w" : "z";
  std::vector<Formula> atoms;
  std::vector<std::string> binary_rels;
  for (const auto& [name, arity] : s.signature())
    if (arity == 2) binary_rels.push_back(name);
  for (const std::string& rel : binary_rels) {
    atoms.push_back(Formula::exists(
        z, Formula::atom(rel, {Term::variable(z), Term::variable(y)})));
    atoms.push_back(Formula::exists(
        z, Formula::atom(rel, {Term::variable(y), Term::variable(z)})));
  }
  for (int c : params) {
    atoms.push_back(Formula::eq(Term::variable(y), Term::constant(c)));
    for (const std::string& rel : binary_rels) {
      Term yc = Term::constant(c);
      atoms.push_back(Formula::atom(rel, {Term::variable(y), yc}));
      atoms.push_back(Formula::atom(rel, {yc, Term::variable(y)}));
      // quantified atom shapes around the constant
      auto zy = Formula::atom(rel, {Term::variable(z), Term::variable(y)});
      auto yz = Formula::atom(rel, {Term::variable(y), Term::variable(z)});
      auto zc = Formula::atom(rel, {Term::variable(z), yc});
      auto cz = Formula::atom(rel, {yc, Term::variable(z)});
      atoms.push_back(Formula::exists(z, Formula::conjunction({zy, zc})));
      atoms.push_back(Formula::exists(z, Formula::conjunction({zy, cz})));
      atoms.push_back(Formula::exists(z, Formula::conjunction({yz, zc})));
      atoms.push_back(Formula::exists(z, Formula::conjunction({yz, cz})));
      atoms.push_back(Formula::exists(z, Formula::conjunction({zy, Formula::negation(zc)})));
      atoms.push_back(Formula::exists(z, Formula::conjunction({Formula::negation(zy), zc})));
      atoms.push_back(Formula::exists(z, Formula::conjunction({yz, Formula::negation(cz)})));
      atoms.push_back(Formula::exists(z, Formula::conjunction({Formula::negation(yz), cz})));
    }
  }
  for (const Formula& a : atoms) {
    if (offer(a)) return pool.at(target);
    Formula na = Formula::negation(a);
    if (offer(na)) return pool.at(target);
  }

  const size_t pool_cap = 4096;
  for (int round = 1; round < depth_budget; ++round) {
    const size_t snapshot = order.size();
    for (size_t i = 0; i < snapshot && pool.size() < pool_cap; ++i)
      for (size_t j = i + 1; j < snapshot && pool.size() < pool_cap; ++j) {
        const Formula& a = pool.at(order[i]);
        const Formula& b = pool.at(order[j]);
        if (offer(Formula::conjunction({a, b}))) return pool.at(target);
        if (offer(Formula::disjunction({a, b}))) return pool.at(target);
        if (offer(Formula::negation(Formula::conjunction({a, b})))) return pool.at(target);
        if (offer(Formula::negation(Formula::disjunction({a, b})))) return pool.at(target);
      }
    if (pool.size() >= pool_cap) break;
  }
  auto it = pool.find(target);
  if (it != pool.end()) return it->second;
  return std::nullopt;
}

}  // namespace vcdlab
