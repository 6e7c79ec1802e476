// Command-line driver: parses a workspace file and dispatches one command.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tauq/run.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tauq::input_error("cannot open workspace file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tauq: Auslander-Reiten data for algebras given by quivers with relations.\n"
      "Relation monomials are read right to left: b*a means `first a, then b',\n"
      "matching the composition of paths."};
  app.require_subcommand(1);

  tauq::RunOptions opt;
  std::string file;
  bool json = false;

  auto add_common = [&](CLI::App* sub, bool needs_module) {
    sub->add_option("workspace", file, "workspace file")->required();
    sub->add_flag("--json", json, "machine-readable output with stable field names");
    sub->add_option("--completion-cap", opt.build_caps.completion_degree,
                    "rewrite completion degree cap");
    sub->add_option("--saturation-cap", opt.build_caps.saturation_length,
                    "basis saturation length cap");
    if (needs_module)
      sub->add_option("-m,--module", opt.module_name, "named module")->required();
  };

  add_common(app.add_subcommand("build", "build the algebra and report its basis"),
             false);
  auto* cls = app.add_subcommand("classify", "structural classification");
  add_common(cls, false);
  cls->add_option("--len-cap", opt.len_cap, "path length cap for the classifiers");
  cls->add_option("--mult-cap", opt.mult_cap, "eventually-multiserial n cap");
  auto* con = app.add_subcommand("conclusions",
                                 "almost-split-sequence existence conclusions");
  add_common(con, false);
  con->add_option("--len-cap", opt.len_cap, "path length cap for the classifiers");
  con->add_option("--mult-cap", opt.mult_cap, "eventually-multiserial n cap");
  auto* dec = app.add_subcommand("decompose", "Krull-Schmidt decomposition");
  add_common(dec, true);
  dec->add_option("--seed", opt.seed, "random seed");
  auto* tau_cmd = app.add_subcommand("tau", "Auslander-Reiten translate");
  add_common(tau_cmd, true);
  tau_cmd->add_option("--seed", opt.seed, "random seed");
  tau_cmd->add_option("--presentation", opt.presentation,
                      "minimal (default) or a coefficient-matrix file");
  auto* taum = app.add_subcommand("tau-minus", "inverse Auslander-Reiten translate");
  add_common(taum, true);
  taum->add_option("--seed", opt.seed, "random seed");
  auto* ass = app.add_subcommand("ass", "almost split sequence ending at the module");
  add_common(ass, true);
  ass->add_option("--seed", opt.seed, "random seed");
  ass->add_flag("--verify", opt.verify, "run the probe verifier");
  ass->add_option("--probes", opt.probes, "all (default) or comma-separated names");
  auto* dua = app.add_subcommand("duality-check", "AR-duality dimension identities");
  add_common(dua, true);
  dua->add_option("--seed", opt.seed, "random seed");
  dua->add_option("--probes", opt.probes, "all (default) or comma-separated names");
  auto* dlz = app.add_subcommand("dualize", "dual module over the opposite algebra");
  add_common(dlz, true);
  dlz->add_option("--seed", opt.seed, "random seed");

  CLI11_PARSE(app, argc, argv);
  opt.command = app.get_subcommands().front()->get_name();

  try {
    const tauq::WorkspaceData ws = tauq::parse_workspace(read_file(file));
    const tauq::RunResult res = tauq::run_command(ws, opt);
    if (json) std::cout << res.json.dump(2) << "\n";
    else std::cout << res.text;
    return res.exit_code;
  } catch (const tauq::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
