#include <CLI11.hpp>
#include <iostream>

#include "berk/cli_runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Lyapunov exponent bounds for rational maps on the Berkovich line over Q_p"};
  app.require_subcommand(1);
  berk::RunConfig cfg;
  long levels = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--map", cfg.map_path, "Map file (corpus file for verify)");
    sub->add_option("--prime", cfg.prime, "Override the prime of the map file");
    sub->add_option("--precision", cfg.precision, "p-adic working precision");
    sub->add_option("--levels", levels, "Number of pullback levels");
    sub->add_option("--budget", cfg.budget, "Cap on the cumulative number of measure atoms");
    sub->add_option("--conjugates", cfg.conjugates, "Conjugation candidates: id, z+1, pz, z/p, 1/z or a,b,c,d");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out_path, "Output file (default: standard output)");
  };
  auto* analyze = app.add_subcommand("analyze", "Lyapunov report for one map");
  auto* pre = app.add_subcommand("preimages", "Weighted iterated preimages of a disc point");
  auto* tree = app.add_subcommand("tree", "Tree spanned by the support of the pulled-back measure");
  auto* verify = app.add_subcommand("verify", "Run the invariant suite over a corpus");
  for (auto* s : {analyze, pre, tree, verify}) add_common(s);
  pre->add_option("--target,--point", cfg.target, "Target disc: JSON point or center,log_radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : berk::kExitInput;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (levels >= 0 || levels < -1) cfg.n_max = levels;
  return berk::run(cfg, std::cout, std::cerr);
}
