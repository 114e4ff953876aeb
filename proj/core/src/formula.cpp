#include "vcdlab/formula.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace vcdlab {

struct Formula::Node {
  Kind kind;
  std::string rel;
  std::vector<Term> terms;
  std::vector<Formula> children;
  std::string var;
  int count = 0;
  std::vector<std::string> free_vars;
  int qdepth = 0;
};

namespace {

std::vector<std::string> merge_free(const std::vector<Formula>& children) {
  std::set<std::string> s;
  for (const Formula& c : children) s.insert(c.free_vars().begin(), c.free_vars().end());
  return {s.begin(), s.end()};
}

int max_depth(const std::vector<Formula>& children) {
  int d = 0;
  for (const Formula& c : children) d = std::max(d, c.quantifier_depth());
  return d;
}

}  // namespace

Formula Formula::atom(std::string rel, std::vector<Term> terms) {
  if (rel.empty()) throw std::invalid_argument("atom: empty relation name");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->rel = std::move(rel);
  n->terms = std::move(terms);
  std::set<std::string> fv;
  for (const Term& t : n->terms)
    if (!t.is_constant) fv.insert(t.var);
  n->free_vars.assign(fv.begin(), fv.end());
  return Formula(std::move(n));
}

Formula Formula::eq(Term a, Term b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Eq;
  n->terms = {std::move(a), std::move(b)};
  std::set<std::string> fv;
  for (const Term& t : n->terms)
    if (!t.is_constant) fv.insert(t.var);
  n->free_vars.assign(fv.begin(), fv.end());
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->free_vars = f.free_vars();
  n->qdepth = f.quantifier_depth();
  n->children = {std::move(f)};
  return Formula(std::move(n));
}

namespace {

std::shared_ptr<Formula::Node> nary_node(Formula::Kind kind, std::vector<Formula> fs) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = kind;
  n->free_vars = merge_free(fs);
  n->qdepth = max_depth(fs);
  n->children = std::move(fs);
  return n;
}

}  // namespace

Formula Formula::conjunction(std::vector<Formula> fs) {
  if (fs.empty()) throw std::invalid_argument("empty connective");
  if (fs.size() == 1) return fs.front();
  return Formula(nary_node(Kind::And, std::move(fs)));
}

Formula Formula::disjunction(std::vector<Formula> fs) {
  if (fs.empty()) throw std::invalid_argument("empty connective");
  if (fs.size() == 1) return fs.front();
  return Formula(nary_node(Kind::Or, std::move(fs)));
}

Formula Formula::implies(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Implies;
  n->children = {std::move(a), std::move(b)};
  n->free_vars = merge_free(n->children);
  n->qdepth = max_depth(n->children);
  return Formula(std::move(n));
}

Formula Formula::iff(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Iff;
  n->children = {std::move(a), std::move(b)};
  n->free_vars = merge_free(n->children);
  n->qdepth = max_depth(n->children);
  return Formula(std::move(n));
}

namespace {

std::shared_ptr<Formula::Node> quantifier_node(Formula::Kind kind, int count, std::string var,
                                               Formula body) {
  if (var.empty()) throw std::invalid_argument("quantifier: empty variable name");
  auto n = std::make_shared<Formula::Node>();
  n->kind = kind;
  n->var = std::move(var);
  n->count = count;
  n->qdepth = body.quantifier_depth() + 1;
  for (const std::string& v : body.free_vars())
    if (v != n->var) n->free_vars.push_back(v);
  n->children = {std::move(body)};
  return n;
}

}  // namespace

Formula Formula::exists(std::string var, Formula body) {
  return Formula(quantifier_node(Kind::Exists, 0, std::move(var), std::move(body)));
}

Formula Formula::forall(std::string var, Formula body) {
  return Formula(quantifier_node(Kind::Forall, 0, std::move(var), std::move(body)));
}

Formula Formula::count_at_least(int k, std::string var, Formula body) {
  if (k < 1) throw std::invalid_argument("counting quantifier requires k >= 1");
  return Formula(quantifier_node(Kind::CountGE, k, std::move(var), std::move(body)));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::rel() const { return node_->rel; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
const std::vector<Formula>& Formula::children() const { return node_->children; }
const std::string& Formula::var() const { return node_->var; }
int Formula::count() const { return node_->count; }
const std::vector<std::string>& Formula::free_vars() const { return node_->free_vars; }
int Formula::quantifier_depth() const { return node_->qdepth; }

namespace {

void collect_vars(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
      for (const Term& t : f.terms())
        if (!t.is_constant) out.insert(t.var);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
    case Formula::Kind::CountGE:
      out.insert(f.var());
      break;
    default:
      break;
  }
  for (const Formula& c : f.children()) collect_vars(c, out);
}

void collect_constants(const Formula& f, std::set<int>& out) {
  for (const Term& t : f.terms())
    if (t.is_constant) out.insert(t.value);
  for (const Formula& c : f.children()) collect_constants(c, out);
}

}  // namespace

std::vector<std::string> Formula::all_vars() const {
  std::set<std::string> s;
  collect_vars(*this, s);
  return {s.begin(), s.end()};
}

std::vector<int> Formula::constants() const {
  std::set<int> s;
  collect_constants(*this, s);
  return {s.begin(), s.end()};
}

bool Formula::operator==(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::Atom:
      if (rel() != o.rel()) return false;
      [[fallthrough]];
    case Kind::Eq:
      return terms() == o.terms();
    case Kind::Exists:
    case Kind::Forall:
    case Kind::CountGE:
      if (var() != o.var() || count() != o.count()) return false;
      break;
    default:
      break;
  }
  return children() == o.children();
}

namespace {

std::string term_str(const Term& t) {
  return t.is_constant ? "@" + std::to_string(t.value) : t.var;
}

// precedence levels: iff 0, implies 1, or 2, and 3, unary 4
int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 0;
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    default: return 4;
  }
}

void print(const Formula& f, int level, std::string& out) {
  const int p = precedence(f.kind());
  const bool wrap = p < level;
  if (wrap) out += "(";
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (f.rel() == "<" && f.terms().size() == 2) {
        out += term_str(f.terms()[0]) + " < " + term_str(f.terms()[1]);
      } else {
        out += f.rel() + "(";
        for (size_t i = 0; i < f.terms().size(); ++i) {
          if (i) out += ", ";
          out += term_str(f.terms()[i]);
        }
        out += ")";
      }
      break;
    case Formula::Kind::Eq:
      out += term_str(f.terms()[0]) + " = " + term_str(f.terms()[1]);
      break;
    case Formula::Kind::Not:
      out += "!";
      print(f.children()[0], 4, out);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const char* sep = f.kind() == Formula::Kind::And ? " & " : " | ";
      for (size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += sep;
        print(f.children()[i], p + 1, out);
      }
      break;
    }
    case Formula::Kind::Implies:
      print(f.children()[0], 2, out);
      out += " -> ";
      print(f.children()[1], 1, out);  // right-associative
      break;
    case Formula::Kind::Iff:
      print(f.children()[0], 0, out);  // left-associative
      out += " <-> ";
      print(f.children()[1], 1, out);
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
    case Formula::Kind::CountGE:
      out += f.kind() == Formula::Kind::Forall ? "forall" : "exists";
      if (f.kind() == Formula::Kind::CountGE) out += "[>=" + std::to_string(f.count()) + "]";
      out += " " + f.var() + ". ";
      print(f.children()[0], 4, out);
      break;
  }
  if (wrap) out += ")";
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

Formula substitute(const Formula& f, const std::string& var, const Term& replacement) {
  auto subst_term = [&](const Term& t) { return (!t.is_constant && t.var == var) ? replacement : t; };
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> ts;
      ts.reserve(f.terms().size());
      for (const Term& t : f.terms()) ts.push_back(subst_term(t));
      return Formula::atom(f.rel(), std::move(ts));
    }
    case Formula::Kind::Eq:
      return Formula::eq(subst_term(f.terms()[0]), subst_term(f.terms()[1]));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
    case Formula::Kind::CountGE: {
      if (f.var() == var) return f;  // bound occurrence shadows
      const auto& fv = f.children()[0].free_vars();
      if (!replacement.is_constant && replacement.var == f.var() &&
          std::binary_search(fv.begin(), fv.end(), var))
        throw std::logic_error("substitute: variable capture of '" + replacement.var + "'");
      Formula body = substitute(f.children()[0], var, replacement);
      if (f.kind() == Formula::Kind::Exists) return Formula::exists(f.var(), std::move(body));
      if (f.kind() == Formula::Kind::Forall) return Formula::forall(f.var(), std::move(body));
      return Formula::count_at_least(f.count(), f.var(), std::move(body));
    }
    default: {
      std::vector<Formula> cs;
      cs.reserve(f.children().size());
      for (const Formula& c : f.children()) cs.push_back(substitute(c, var, replacement));
      switch (f.kind()) {
        case Formula::Kind::Not: return Formula::negation(std::move(cs[0]));
        case Formula::Kind::And: return Formula::conjunction(std::move(cs));
        case Formula::Kind::Or: return Formula::disjunction(std::move(cs));
        case Formula::Kind::Implies: return Formula::implies(std::move(cs[0]), std::move(cs[1]));
        default: return Formula::iff(std::move(cs[0]), std::move(cs[1]));
      }
    }
  }
}

namespace {

std::string fresh_name(const std::string& base, int i, const std::set<std::string>& used) {
  std::string cand = base + std::to_string(i);
  while (used.count(cand)) cand += "_";
  return cand;
}

}  // namespace

Formula expand_counting(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
      return f;
    case Formula::Kind::CountGE: {
      Formula body = expand_counting(f.children()[0]);
      const int k = f.count();
      if (k == 1) return Formula::exists(f.var(), std::move(body));
      std::set<std::string> used;
      {
        auto av = body.all_vars();
        used.insert(av.begin(), av.end());
        used.insert(f.var());
      }
      std::vector<std::string> names;
      for (int i = 1; i <= k; ++i) {
        names.push_back(fresh_name(f.var(), i, used));
        used.insert(names.back());
      }
      std::vector<Formula> parts;
      for (const std::string& nm : names)
        parts.push_back(substitute(body, f.var(), Term::variable(nm)));
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          parts.push_back(Formula::negation(
              Formula::eq(Term::variable(names[static_cast<size_t>(i)]),
                          Term::variable(names[static_cast<size_t>(j)]))));
      Formula out = Formula::conjunction(std::move(parts));
      for (int i = k - 1; i >= 0; --i) out = Formula::exists(names[static_cast<size_t>(i)], std::move(out));
      return out;
    }
    case Formula::Kind::Exists:
      return Formula::exists(f.var(), expand_counting(f.children()[0]));
    case Formula::Kind::Forall:
      return Formula::forall(f.var(), expand_counting(f.children()[0]));
    default: {
      std::vector<Formula> cs;
      cs.reserve(f.children().size());
      for (const Formula& c : f.children()) cs.push_back(expand_counting(c));
      switch (f.kind()) {
        case Formula::Kind::Not: return Formula::negation(std::move(cs[0]));
        case Formula::Kind::And: return Formula::conjunction(std::move(cs));
        case Formula::Kind::Or: return Formula::disjunction(std::move(cs));
        case Formula::Kind::Implies: return Formula::implies(std::move(cs[0]), std::move(cs[1]));
        default: return Formula::iff(std::move(cs[0]), std::move(cs[1]));
      }
    }
  }
}

}  // namespace vcdlab
