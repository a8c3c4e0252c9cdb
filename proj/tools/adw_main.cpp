#include <CLI11.hpp>
#include <iostream>

#include "adw/runner.hpp"

using namespace adw;

namespace {

// shared option plumbing: every subcommand collects raw flag strings into
// the RunConfig so runs replay from their stored configuration alone
struct FlagBinder {
  RunConfig* cfg;
  void bind(CLI::App* app, const std::string& name, const std::string& help,
            bool required = false) {
    auto* opt = app->add_option_function<std::string>(
        "--" + name,
        [this, name](const std::string& v) { cfg->flags[name] = v; }, help);
    if (required) opt->required();
  }
};

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InfeasibleError*>(&e)) return 3;
  if (dynamic_cast<const PrecisionError*>(&e)) return 4;
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adelic workbench: exact heights, invariant forms, adelic "
               "convex bodies, approximants and criterion searches over Q"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string replay_dir;
  bool want_plots = false;
  app.add_option("--precision-bits", cfg.precision_bits,
                 "working precision for enclosures")
      ->default_val(256);
  app.add_option("--out", cfg.out_dir, "run directory for JSON-lines output");
  app.add_option("--seed", cfg.seed, "random seed for sampled corpora")
      ->default_val(1);
  app.add_flag("--json", cfg.json_stdout, "print records to stdout");
  app.add_flag("--plots", want_plots, "emit plot.csv/plot.svg into --out");

  FlagBinder bind{&cfg};

  CLI::App* form = app.add_subcommand("form", "invariant bilinear form tables");
  bind.bind(form, "case", "add | mult");
  bind.bind(form, "gamma", "progression difference/ratio (rational)");
  bind.bind(form, "n", "degree bound");

  CLI::App* minima = app.add_subcommand("minima", "successive minima of a body");
  bind.bind(minima, "n", "degree bound");
  bind.bind(minima, "points", "comma-separated point specs");
  bind.bind(minima, "mults", "comma-separated multiplicities");
  bind.bind(minima, "X", "sup-norm bound");
  bind.bind(minima, "Y", "evaluation bound parameter");
  bind.bind(minima, "body", "C | Cbar | Cphi");
  bind.bind(minima, "method", "exhaustive | reduced");

  CLI::App* approx = app.add_subcommand("approx", "conjugate approximant runs");
  bind.bind(approx, "n", "degree of the approximants");
  bind.bind(approx, "t", "number of target conjugates");
  bind.bind(approx, "points", "distinct target points");
  bind.bind(approx, "mults", "multiplicities (sum = t)");
  bind.bind(approx, "case", "thm1 | thm2");
  bind.bind(approx, "D", "curve degree parameter");
  bind.bind(approx, "X-grid", "start:factor:count");
  bind.bind(approx, "prime", "Eisenstein prime (default 2)");

  CLI::App* gelfond = app.add_subcommand("gelfond", "criterion feasibility runs");
  bind.bind(gelfond, "case", "add | mult");
  bind.bind(gelfond, "gamma", "progression difference/ratio");
  bind.bind(gelfond, "seed-point", "progression seed point spec");
  bind.bind(gelfond, "n", "degree bound");
  bind.bind(gelfond, "t", "criterion parameter t");
  bind.bind(gelfond, "exponent", "dirichlet | theorem | value:q");
  bind.bind(gelfond, "delta", "dirichlet slack (default 1/10)");
  bind.bind(gelfond, "Y-grid", "start:factor:count");
  bind.bind(gelfond, "search", "reduced | exhaustive");
  bind.bind(gelfond, "phi-x-grid", "emit the dual first-minimum scan instead");
  bind.bind(gelfond, "nu", "exponent parameter nu for the scan");
  bind.bind(gelfond, "method", "scan minima method");

  CLI::App* diag = app.add_subcommand("diag", "Hankel diagnostics on a record");
  bind.bind(diag, "input", "records.jsonl or single-record file", true);
  bind.bind(diag, "n", "degree bound of the witness");
  bind.bind(diag, "t", "number of approximation points");
  bind.bind(diag, "k", "rank-drop search bound (default: proof preset)");
  bind.bind(diag, "u", "auxiliary multiplicity (default: proof preset)");
  bind.bind(diag, "nu", "nu for the preset");
  bind.bind(diag, "D", "curve degree for the preset");
  bind.bind(diag, "points", "points for small-value checks");
  bind.bind(diag, "X", "height budget for small-value checks");

  CLI::App* replay = app.add_subcommand("replay", "re-run a stored config");
  replay->add_option("--run", replay_dir, "run directory")->required();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();
  CLI11_PARSE(app, argc, argv);

  try {
    if (replay->parsed()) {
      RunRecord fresh = replay_run(replay_dir);
      std::cout << "replay ok: " << fresh.records.size()
                << " records, exact fields identical\n";
      return 0;
    }
    for (CLI::App* sub : {form, minima, approx, gelfond, diag})
      if (sub->parsed()) cfg.subcommand = sub->get_name();
    RunRecord rec = run(cfg);
    if (cfg.json_stdout)
      for (const Json& j : rec.records) std::cout << j.dump() << "\n";
    else
      std::cout << rec.summary.dump(2) << "\n";
    if (want_plots) {
      if (cfg.out_dir.empty())
        std::cerr << "warning: --plots needs --out DIR\n";
      else {
        PlotOutcome p = emit_plots(rec, cfg.out_dir);
        if (!p.emitted) std::cerr << "warning: " << p.note << "\n";
      }
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
