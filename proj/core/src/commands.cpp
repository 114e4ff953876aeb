#include "vcdlab/commands.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "vcdlab/definability.hpp"
#include "vcdlab/definer.hpp"
#include "vcdlab/eval.hpp"
#include "vcdlab/gallery.hpp"
#include "vcdlab/io.hpp"
#include "vcdlab/parser.hpp"
#include "vcdlab/symmetry.hpp"
#include "vcdlab/typespace.hpp"
#include "vcdlab/verify.hpp"

namespace vcdlab::cli {

namespace {

using Clock = std::chrono::steady_clock;

nlohmann::json permutation_json(const Permutation& p) { return p.image; }

int resolve_element(const FiniteStructure& s, const std::string& token) {
  if (auto idx = s.element_by_label(token)) return *idx;
  try {
    const int e = std::stoi(token);
    if (e >= 0 && e < s.universe_size()) return e;
  } catch (...) {
  }
  throw std::invalid_argument("unknown element '" + token + "'");
}

std::vector<int> resolve_b_spec(const ModelFile& model, const std::string& spec) {
  const FiniteStructure& s = *model.structure;
  if (spec == "none") return {};
  if (spec == "all") {
    std::vector<int> all(static_cast<size_t>(s.universe_size()));
    for (int i = 0; i < s.universe_size(); ++i) all[static_cast<size_t>(i)] = i;
    return all;
  }
  if (spec.rfind("set:", 0) == 0) {
    const std::string name = spec.substr(4);
    auto it = model.sets.find(name);
    if (it == model.sets.end())
      throw std::invalid_argument("model file has no set named '" + name + "'");
    return it->second;
  }
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) out.push_back(resolve_element(s, token));
  }
  if (out.empty()) throw std::invalid_argument("empty parameter set specification");
  return out;
}

std::string display_member(const FiniteStructure& s, const std::vector<int>& member) {
  std::string out;
  for (size_t i = 0; i < member.size(); ++i) {
    if (i) out += ",";
    out += s.display(member[i]);
  }
  return member.size() == 1 ? out : "(" + out + ")";
}

RunReport finish(RunReport rep, Clock::time_point start) {
  rep.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return rep;
}

}  // namespace

nlohmann::json RunReport::to_json() const {
  return {{"command", command}, {"inputs", inputs},           {"findings", findings},
          {"seed", seed},       {"wall_seconds", wall_seconds}, {"exit_code", exit_code}};
}

RunReport cmd_gen(const GenOptions& opt) {
  const auto start = Clock::now();
  RunReport rep;
  rep.command = "gen " + opt.kind;
  rep.seed = opt.seed;

  nlohmann::json model;
  std::ostringstream text;
  if (opt.kind == "grid") {
    const GridOrder g = make_grid_order({opt.n, opt.k});
    model = model_to_json(g.poset.structure(), {{"B", g.B}, {"A", g.A}});
    text << "grid order: n=" << opt.n << " k=" << opt.k << " universe="
         << g.poset.size() << " |B|=" << g.B.size() << " |A|=" << g.A.size() << "\n";
    rep.inputs = {{"kind", "grid"}, {"n", opt.n}, {"k", opt.k}};
  } else if (opt.kind == "hypercube") {
    const HypercubePoset h = make_hypercube_poset({opt.d});
    model = model_to_json(h.poset.structure(), {{"P", h.points}, {"H", h.hyperplanes}});
    text << "hypercube poset: d=" << opt.d << " universe=" << h.poset.size() << " |P|="
         << h.points.size() << " |H|=" << h.hyperplanes.size() << "\n";
    rep.inputs = {{"kind", "hypercube"}, {"d", opt.d}};
  } else if (opt.kind == "random") {
    const PosetView p = random_width_poset(opt.width, opt.size, opt.seed);
    model = model_to_json(p.structure());
    text << "random poset: width=" << opt.width << " size=" << opt.size << " seed=" << opt.seed
         << "\n";
    rep.inputs = {{"kind", "random"}, {"width", opt.width}, {"size", opt.size}};
  } else {
    throw std::invalid_argument("unknown generator '" + opt.kind +
                                "' (expected: grid, hypercube, random)");
  }
  rep.findings = {{"universe", model.at("universe")}};
  if (opt.output.empty()) {
    rep.text = model.dump(2) + "\n";
  } else {
    std::ofstream out(opt.output);
    if (!out) throw std::invalid_argument("cannot write '" + opt.output + "'");
    out << model.dump(2) << "\n";
    text << "wrote " << opt.output << "\n";
    rep.text = text.str();
    rep.findings["output"] = opt.output;
  }
  return finish(std::move(rep), start);
}

RunReport cmd_analyze(const AnalyzeOptions& opt) {
  const auto start = Clock::now();
  RunReport rep;
  rep.command = "analyze";
  const uint64_t input_hash = fnv1a_file(opt.file);
  rep.inputs = {{"file", opt.file}, {"fnv1a", input_hash}};

  const ModelFile model = read_model_file(opt.file);
  const FiniteStructure& s = *model.structure;
  PosetView p = validate_poset(model.structure, opt.rel);
  std::ostringstream text;
  text << "universe " << s.universe_size() << ", order relation '" << opt.rel << "' is a valid "
       << "strict partial order\n";

  if (opt.width) {
    const int w = width(p);
    rep.findings["width"] = w;
    text << "width: " << w << "\n";
  }
  if (opt.breadth) {
    std::vector<DynBitset> downsets;
    for (int b = 0; b < s.universe_size(); ++b) {
      Formula f = Formula::atom(opt.rel, {Term::variable("x"), Term::constant(b)});
      downsets.push_back(satisfier_set(s, f, "x"));
    }
    const BreadthReport br = breadth(downsets);
    rep.findings["breadth"] = br.breadth ? nlohmann::json(*br.breadth) : nlohmann::json();
    rep.findings["breadth_family_size"] = br.family.size();
    // which deduplicated family member each parameter generates
    nlohmann::json gen = nlohmann::json::object();
    for (int b = 0; b < s.universe_size(); ++b)
      for (size_t k = 0; k < br.family.size(); ++k)
        if (br.family[k] == downsets[static_cast<size_t>(b)]) {
          gen[s.display(b)] = k;
          break;
        }
    rep.findings["breadth_family_of"] = std::move(gen);
    nlohmann::json wj = nlohmann::json::array();
    for (const BreadthWitness& w : br.witnesses)
      wj.push_back({{"subset", w.subset}, {"collapse", w.collapse}});
    rep.findings["breadth_witnesses"] = std::move(wj);
    text << "breadth of the down-set family: ";
    if (br.breadth)
      text << *br.breadth;
    else
      text << "undefined (empty family)";
    text << " (" << br.family.size() << " distinct sets)\n";
  }
  if (opt.zerotypes) {
    const ZeroTypePartition z = zero_type_partition(p);
    nlohmann::json classes = nlohmann::json::array();
    text << z.classes.size() << " zero-parameter type classes:\n";
    for (size_t i = 0; i < z.classes.size(); ++i) {
      classes.push_back({{"members", z.classes[i]}, {"invariants", z.invariants[i]}});
      text << "  class " << i << " size " << z.classes[i].size() << " [";
      for (size_t j = 0; j < z.classes[i].size(); ++j)
        text << (j ? " " : "") << s.display(z.classes[i][j]);
      text << "]\n";
    }
    rep.findings["zerotype_classes"] = std::move(classes);
  }
  if (opt.aut) {
    const auto gens = automorphism_generators(s, {});
    nlohmann::json gj = nlohmann::json::array();
    for (const Permutation& g : gens) gj.push_back(permutation_json(g));
    rep.findings["automorphism_generators"] = std::move(gj);
    text << gens.size() << " automorphism generator(s)\n";
    if (s.universe_size() <= 8) {
      const auto whole = brute_force_automorphisms(s, {});
      rep.findings["group_order"] = whole.size();
      text << "group order (brute-force path): " << whole.size() << "\n";
    }
    const OrbitPartition orb = orbits(s, {});
    nlohmann::json oj = nlohmann::json::array();
    for (const auto& o : orb.orbits) oj.push_back(o);
    rep.findings["orbits"] = std::move(oj);
    text << orb.orbits.size() << " orbit(s) over the empty parameter set\n";
  }
  rep.text = text.str();
  return finish(std::move(rep), start);
}

RunReport cmd_definability(const DefinabilityOptions& opt) {
  const auto start = Clock::now();
  RunReport rep;
  rep.command = "definability";
  const uint64_t input_hash = fnv1a_file(opt.file);
  rep.inputs = {{"file", opt.file}, {"fnv1a", input_hash}, {"d", opt.d}};

  const ModelFile model = read_model_file(opt.file);
  const FiniteStructure& s = *model.structure;
  validate_poset(model.structure, opt.rel);

  ParseContext pc{&s, opt.rel};
  std::vector<Formula> formulas;
  std::vector<std::string> sources = opt.delta.empty() ? std::vector<std::string>{"x < y"}
                                                       : opt.delta;
  for (const std::string& src : sources) formulas.push_back(parse_formula(src, pc));
  const FormulaSet delta = make_formula_set(std::move(formulas));
  const ParamSet B = ParamSet::from_elements(resolve_b_spec(model, opt.b_spec));

  std::optional<std::vector<int>> over;
  if (opt.over) over = resolve_b_spec(model, *opt.over);
  if (opt.type_of) over = std::vector<int>{resolve_element(s, *opt.type_of)};
  const std::vector<TypeTrace> traces = enumerate_types(s, delta, B, over);

  DefinabilityContext ctx(s, delta, B);
  ctx.set_jobs(opt.jobs);
  std::vector<TypeDefinability> types;
  nlohmann::json tj = nlohmann::json::array();
  std::ostringstream text;
  text << traces.size() << " realized type(s) over |B|=" << B.size() << ", d=" << opt.d << "\n";
  for (const TypeTrace& t : traces) {
    TypeDefinability td{t, ctx.def_tuples(t, opt.d)};
    nlohmann::json entry = trace_to_json(delta, B, t);
    entry["def_tuples"] = td.def_set;
    // one replayable refutation for the first inadmissible tuple, if any
    if (td.def_set.empty() && B.size() > 0 && opt.d > 0) {
      DefinabilityVerdict v = ctx.is_definable_over(t, std::vector<int>(static_cast<size_t>(opt.d), 0));
      if (v.violation) {
        entry["refutation"] = {{"sigma", permutation_json(v.violation->sigma)},
                               {"b_from", v.violation->b_from},
                               {"b_to", v.violation->b_to},
                               {"formula", v.violation->formula}};
      }
    }
    text << "  type realized by " << s.display(t.realizers.front()) << ": |Def| = "
         << td.def_set.size() << "\n";
    tj.push_back(std::move(entry));
    types.push_back(std::move(td));
  }
  const SchemeBound sb = min_scheme_count(types, opt.d);
  rep.findings["types"] = std::move(tj);
  if (sb.lower_bound) {
    rep.findings["scheme_lower_bound"] = *sb.lower_bound;
    rep.findings["assignment"] = sb.assignment;
    text << "scheme-count lower bound: " << *sb.lower_bound << "\n";
  } else {
    rep.findings["scheme_lower_bound"] = "infinite";
    text << "scheme-count lower bound: infinite (some Def(p) is empty)\n";
  }
  rep.text = text.str();
  return finish(std::move(rep), start);
}

RunReport cmd_lemma31(const Lemma31Options& opt) {
  const auto start = Clock::now();
  RunReport rep;
  rep.command = "lemma31";
  const uint64_t input_hash = fnv1a_file(opt.file);
  rep.inputs = {{"file", opt.file}, {"fnv1a", input_hash},
                {"psi", opt.psi},   {"phi", opt.phi},
                {"d", opt.d}};

  const ModelFile model = read_model_file(opt.file);
  const FiniteStructure& s = *model.structure;
  validate_poset(model.structure, opt.rel);
  ParseContext pc{&s, opt.rel};
  const Formula psi = parse_formula(opt.psi, pc);
  const FormulaSet phi = make_formula_set({parse_formula(opt.phi, pc)});
  const int c = resolve_element(s, opt.c);
  const ParamSet B = ParamSet::from_elements(resolve_b_spec(model, opt.b_spec));

  const DefinerResult r = recursive_define(s, psi, phi, c, B, opt.d);
  std::ostringstream text;
  text << "defining formula: " << r.formula.to_string() << "\n";
  text << "parameters used (" << r.params_used.size() << " of at most " << opt.d << "):";
  nlohmann::json steps = nlohmann::json::array();
  for (const DefinerStep& st : r.params_used) {
    text << " " << display_member(s, st.b_member) << "[case " << st.case_id << " depth "
         << st.depth << "]";
    steps.push_back({{"b_index", st.b_index},
                     {"member", st.b_member},
                     {"case", st.case_id},
                     {"depth", st.depth}});
  }
  text << "\nreplay:";
  nlohmann::json verdicts = nlohmann::json::array();
  for (int j = 0; j < B.size(); ++j) {
    text << " " << display_member(s, B[j]) << (r.verdicts[static_cast<size_t>(j)] ? "+" : "-");
    verdicts.push_back(r.verdicts[static_cast<size_t>(j)]);
  }
  text << "\n";
  rep.findings = {{"formula", r.formula.to_string()},
                  {"params_used", std::move(steps)},
                  {"depth", r.depth},
                  {"counting_emission", r.counting_emission},
                  {"verdicts", std::move(verdicts)},
                  {"param_count", r.formula.param_count()}};
  rep.text = text.str();
  return finish(std::move(rep), start);
}

RunReport cmd_verify(const VerifyOptions& opt) {
  const auto start = Clock::now();
  RunReport rep;
  rep.command = "verify " + opt.suite;
  rep.inputs = {{"suite", opt.suite}};

  std::ostringstream text;
  const auto results = verify::run_suite(opt.suite, &text);
  nlohmann::json rj = nlohmann::json::array();
  for (const auto& r : results)
    rj.push_back({{"id", r.id},
                  {"title", r.title},
                  {"pass", r.pass},
                  {"seconds", r.seconds},
                  {"summary", r.summary},
                  {"details", r.details}});
  rep.findings = {{"criteria", std::move(rj)}, {"all_passed", verify::all_passed(results)}};
  rep.exit_code = verify::all_passed(results) ? 0 : 1;
  text << (rep.exit_code == 0 ? "all criteria passed" : "at least one criterion FAILED") << "\n";
  rep.text = text.str();
  return finish(std::move(rep), start);
}

}  // namespace vcdlab::cli
