#include <iostream>

#include <CLI11.hpp>

#include "vcdlab/commands.hpp"
#include "vcdlab/errors.hpp"

namespace {

int emit(const vcdlab::cli::RunReport& rep, bool as_json) {
  if (as_json)
    std::cout << rep.to_json().dump(2) << "\n";
  else
    std::cout << rep.text;
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for parameter-definability of types over finite partial orders"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "emit the machine-readable report with certificates");
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker cap for parallel module calls")->default_val(1);

  vcdlab::cli::GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "generate a structure file");
  gen->fallthrough();
  auto* gen_grid = gen->add_subcommand("grid", "stacked-copies grid order");
  gen_grid->fallthrough();
  gen_grid->add_option("--n", gen_opt.n, "grid granularity (universe {0..4n} per copy)")
      ->default_val(1);
  gen_grid->add_option("--k", gen_opt.k, "number of copies")->default_val(3);
  auto* gen_hyper = gen->add_subcommand("hypercube", "half-space membership poset");
  gen_hyper->fallthrough();
  gen_hyper->add_option("--d", gen_opt.d, "dimension parameter")->default_val(1);
  auto* gen_random = gen->add_subcommand("random", "seeded random poset of exact width");
  gen_random->fallthrough();
  gen_random->add_option("--width", gen_opt.width, "target width")->default_val(3);
  gen_random->add_option("--size", gen_opt.size, "universe size")->default_val(12);
  gen_random->add_option("--seed", gen_opt.seed, "random seed")->default_val(0);
  for (auto* sub : {gen_grid, gen_hyper, gen_random})
    sub->add_option("-o,--output", gen_opt.output, "output file (default: stdout)");

  vcdlab::cli::AnalyzeOptions an_opt;
  auto* an = app.add_subcommand("analyze", "order-theoretic measurements of a model file");
  an->fallthrough();
  an->add_option("file", an_opt.file, "model file")->required();
  an->add_flag("--width", an_opt.width, "maximum antichain size");
  an->add_flag("--breadth", an_opt.breadth, "breadth of the down-set family");
  an->add_flag("--zerotypes", an_opt.zerotypes, "zero-parameter type classes");
  an->add_flag("--aut", an_opt.aut, "automorphism generators and orbits");
  an->add_option("--rel", an_opt.rel, "order relation name")->default_val("<");

  vcdlab::cli::DefinabilityOptions def_opt;
  auto* def = app.add_subcommand("definability",
                                 "per-type admissible parameter tuples and the scheme bound");
  def->fallthrough();
  def->add_option("file", def_opt.file, "model file")->required();
  def->add_option("--delta", def_opt.delta, "partitioned formula(s) phi(x;y) in the DSL");
  def->add_option("--B", def_opt.b_spec, "parameter set: set:NAME, all, none, or elements")
      ->default_val("set:B");
  def->add_option("--d", def_opt.d, "parameter tuple length")->default_val(1);
  def->add_option("--type-of", def_opt.type_of, "restrict to the type of this element");
  def->add_option("--over", def_opt.over, "restrict realizers: set:NAME, all, or elements");
  def->add_option("--rel", def_opt.rel, "order relation name")->default_val("<");

  vcdlab::cli::Lemma31Options lem_opt;
  auto* lem = app.add_subcommand("lemma31", "recursive defining-formula construction");
  lem->fallthrough();
  lem->add_option("file", lem_opt.file, "model file")->required();
  lem->add_option("--psi", lem_opt.psi, "bounded starting formula psi(x)")->required();
  lem->add_option("--phi", lem_opt.phi, "partitioned formula phi(x;y)")->required();
  lem->add_option("--c", lem_opt.c, "target element")->required();
  lem->add_option("--B", lem_opt.b_spec, "parameter set: set:NAME, all, or elements")
      ->default_val("set:B");
  lem->add_option("--d", lem_opt.d, "parameter budget beyond psi's")->required();
  lem->add_option("--rel", lem_opt.rel, "order relation name")->default_val("<");

  vcdlab::cli::VerifyOptions ver_opt;
  auto* ver = app.add_subcommand("verify", "run the claim suite (paper|quick)");
  ver->fallthrough();
  ver->add_option("suite", ver_opt.suite, "paper or quick")->default_val("paper");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (gen_grid->parsed()) gen_opt.kind = "grid";
      if (gen_hyper->parsed()) gen_opt.kind = "hypercube";
      if (gen_random->parsed()) gen_opt.kind = "random";
      if (gen_opt.kind.empty()) {
        std::cerr << "gen: choose one of grid, hypercube, random\n";
        return 2;
      }
      return emit(vcdlab::cli::cmd_gen(gen_opt), as_json);
    }
    if (an->parsed()) return emit(vcdlab::cli::cmd_analyze(an_opt), as_json);
    if (def->parsed()) {
      def_opt.jobs = jobs;
      return emit(vcdlab::cli::cmd_definability(def_opt), as_json);
    }
    if (lem->parsed()) return emit(vcdlab::cli::cmd_lemma31(lem_opt), as_json);
    if (ver->parsed()) return emit(vcdlab::cli::cmd_verify(ver_opt), as_json);
  } catch (const vcdlab::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
