#include "vcdlab/typespace.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace vcdlab {

ParamSet ParamSet::from_elements(std::vector<int> elements) {
  ParamSet b;
  b.arity = 1;
  for (int e : elements) b.members.push_back({e});
  auto sorted = b.members;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("parameter set members must be distinct");
  return b;
}

ParamSet ParamSet::from_tuples(int arity, std::vector<std::vector<int>> tuples) {
  if (arity < 1) throw std::invalid_argument("parameter arity must be >= 1");
  ParamSet b;
  b.arity = arity;
  for (auto& t : tuples) {
    if (static_cast<int>(t.size()) != arity)
      throw std::invalid_argument("parameter tuple arity mismatch");
    b.members.push_back(std::move(t));
  }
  auto sorted = b.members;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("parameter set members must be distinct");
  return b;
}

std::optional<int> ParamSet::index_of(const std::vector<int>& member) const {
  for (int j = 0; j < size(); ++j)
    if (members[static_cast<size_t>(j)] == member) return j;
  return std::nullopt;
}

FormulaSet make_formula_set(std::vector<Formula> formulas, std::vector<std::string> object_vars,
                            std::vector<std::string> param_vars) {
  FormulaSet d;
  d.object_vars = std::move(object_vars);
  d.param_vars = std::move(param_vars);
  for (const Formula& f : formulas)
    for (const std::string& v : f.free_vars()) {
      const bool known =
          std::find(d.object_vars.begin(), d.object_vars.end(), v) != d.object_vars.end() ||
          std::find(d.param_vars.begin(), d.param_vars.end(), v) != d.param_vars.end();
      if (!known)
        throw std::invalid_argument("formula set: stray free variable '" + v + "' in " +
                                    f.to_string());
    }
  d.formulas = std::move(formulas);
  return d;
}

TypeTrace realize_type(const FiniteStructure& s, const FormulaSet& delta, std::span<const int> a,
                       const ParamSet& B) {
  if (a.size() != delta.object_vars.size())
    throw std::invalid_argument("realize_type: object tuple arity mismatch");
  if (B.arity != static_cast<int>(delta.param_vars.size()))
    throw std::invalid_argument("realize_type: parameter arity mismatch");
  TypeTrace t;
  t.formula_count = static_cast<int>(delta.formulas.size());
  t.b_size = B.size();
  t.positive = DynBitset(t.formula_count * t.b_size);
  Evaluator ev(s);
  Env base;
  for (size_t k = 0; k < a.size(); ++k) base.bind(delta.object_vars[k], a[k]);
  for (int j = 0; j < B.size(); ++j) {
    Env env = base;
    for (int k = 0; k < B.arity; ++k) env.bind(delta.param_vars[static_cast<size_t>(k)], B[j][static_cast<size_t>(k)]);
    for (int i = 0; i < t.formula_count; ++i)
      if (ev.eval(delta.formulas[static_cast<size_t>(i)], env)) t.positive.set(i * t.b_size + j);
  }
  return t;
}

std::vector<TypeTrace> enumerate_types(const FiniteStructure& s, const FormulaSet& delta,
                                       const ParamSet& B,
                                       const std::optional<std::vector<int>>& over) {
  if (delta.object_vars.size() != 1)
    throw std::invalid_argument("enumerate_types supports a single object variable only");
  std::vector<int> domain;
  if (over) {
    domain = *over;
    std::sort(domain.begin(), domain.end());
    domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  } else {
    domain.resize(static_cast<size_t>(s.universe_size()));
    for (int i = 0; i < s.universe_size(); ++i) domain[static_cast<size_t>(i)] = i;
  }
  std::map<std::vector<uint64_t>, size_t> seen;  // trace key -> result slot
  std::vector<TypeTrace> out;
  for (int a : domain) {
    const int elem[1] = {a};
    TypeTrace t = realize_type(s, delta, elem, B);
    std::vector<uint64_t> key;
    key.reserve(static_cast<size_t>(t.positive.universe() / 64 + 1));
    for (int bit = 0; bit < t.positive.universe(); bit += 64) {
      uint64_t w = 0;
      for (int k = 0; k < 64 && bit + k < t.positive.universe(); ++k)
        if (t.positive.test(bit + k)) w |= uint64_t{1} << k;
      key.push_back(w);
    }
    auto [it, fresh] = seen.emplace(std::move(key), out.size());
    if (fresh) {
      t.realizers = {a};
      out.push_back(std::move(t));
    } else {
      out[it->second].realizers.push_back(a);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const TypeTrace& x, const TypeTrace& y) { return x.positive.lex_less(y.positive); });
  for (TypeTrace& t : out) std::sort(t.realizers.begin(), t.realizers.end());
  return out;
}

}  // namespace vcdlab
