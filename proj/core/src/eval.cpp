#include "vcdlab/eval.hpp"

#include <algorithm>
#include <stdexcept>

#include "vcdlab/errors.hpp"
#include "vcdlab/resource.hpp"

namespace vcdlab {

std::optional<int> Env::lookup(const std::string& var) const {
  auto it = std::lower_bound(v_.begin(), v_.end(), var,
                             [](const auto& p, const std::string& k) { return p.first < k; });
  if (it != v_.end() && it->first == var) return it->second;
  return std::nullopt;
}

void Env::bind(const std::string& var, int value) {
  auto it = std::lower_bound(v_.begin(), v_.end(), var,
                             [](const auto& p, const std::string& k) { return p.first < k; });
  if (it != v_.end() && it->first == var)
    it->second = value;
  else
    v_.insert(it, {var, value});
}

Env Env::extended(const std::string& var, int value) const {
  Env e = *this;
  e.bind(var, value);
  return e;
}

int Evaluator::value_of(const Term& t, const Env& env) const {
  if (t.is_constant) {
    if (t.value < 0 || t.value >= s_.universe_size())
      throw std::invalid_argument("constant @" + std::to_string(t.value) + " outside universe");
    return t.value;
  }
  auto v = env.lookup(t.var);
  if (!v) throw std::invalid_argument("unbound variable '" + t.var + "'");
  return *v;
}

bool Evaluator::eval(const Formula& f, const Env& env) {
  const int cap = limits().quantifier_depth_cap;
  if (f.quantifier_depth() > cap)
    throw ResourceLimitError("formula quantifier depth " + std::to_string(f.quantifier_depth()) +
                             " exceeds cap " + std::to_string(cap));
  return run(f, env);
}

bool Evaluator::run(const Formula& f, const Env& env) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<int> tuple;
      tuple.reserve(f.terms().size());
      for (const Term& t : f.terms()) tuple.push_back(value_of(t, env));
      return s_.holds(f.rel(), tuple);
    }
    case Formula::Kind::Eq:
      return value_of(f.terms()[0], env) == value_of(f.terms()[1], env);
    case Formula::Kind::Not:
      return !run(f.children()[0], env);
    case Formula::Kind::And:
      for (const Formula& c : f.children())
        if (!run(c, env)) return false;
      return true;
    case Formula::Kind::Or:
      for (const Formula& c : f.children())
        if (run(c, env)) return true;
      return false;
    case Formula::Kind::Implies:
      return !run(f.children()[0], env) || run(f.children()[1], env);
    case Formula::Kind::Iff:
      return run(f.children()[0], env) == run(f.children()[1], env);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
    case Formula::Kind::CountGE: {
      // memo key: values of the node's free variables, in their sorted order
      std::string key;
      for (const std::string& v : f.free_vars()) {
        auto val = env.lookup(v);
        if (!val) throw std::invalid_argument("unbound variable '" + v + "'");
        key += std::to_string(*val);
        key += ',';
      }
      auto& per_node = memo_[f.id()];
      if (auto it = per_node.find(key); it != per_node.end()) return it->second;

      const Formula& body = f.children()[0];
      const int n = s_.universe_size();
      bool result;
      if (f.kind() == Formula::Kind::Exists) {
        result = false;
        for (int a = 0; a < n && !result; ++a) result = run(body, env.extended(f.var(), a));
      } else if (f.kind() == Formula::Kind::Forall) {
        result = true;
        for (int a = 0; a < n && result; ++a) result = run(body, env.extended(f.var(), a));
      } else {
        int hits = 0;
        for (int a = 0; a < n && hits < f.count(); ++a)
          if (run(body, env.extended(f.var(), a))) ++hits;
        result = hits >= f.count();
      }
      per_node.emplace(std::move(key), result);
      return result;
    }
  }
  throw std::logic_error("unreachable formula kind");
}

bool eval(const FiniteStructure& s, const Formula& f, const Env& env) {
  return Evaluator(s).eval(f, env);
}

DynBitset satisfier_set(const FiniteStructure& s, const Formula& f, const std::string& free_var) {
  const auto& fv = f.free_vars();
  if (fv.size() != 1 || fv[0] != free_var)
    throw std::invalid_argument("satisfier_set: formula must have exactly the free variable '" +
                                free_var + "'");
  Evaluator ev(s);
  DynBitset out(s.universe_size());
  for (int a = 0; a < s.universe_size(); ++a)
    if (ev.eval(f, Env{{free_var, a}})) out.set(a);
  return out;
}

std::vector<int> satisfier_elements(const FiniteStructure& s, const Formula& f,
                                    const std::string& free_var) {
  return satisfier_set(s, f, free_var).to_vector();
}

}  // namespace vcdlab
