// slice-cauchy: reconstruction and boundary-jump verification for slice
// functions over *-algebras. Emits deterministic CSV error tables.
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <slicecauchy/slicecauchy.hpp>

namespace {

void add_common_flags(CLI::App* sub, slicecauchy::RunConfig& cfg) {
  sub->add_option("--config", [](const std::vector<std::string>&) {
        return true;  // consumed by the pre-scan below
      },
      "flat key=value config file (flags override it)");
  sub->add_option("--algebra", cfg.algebra,
                  "algebra name: quaternion | clifford:n");
  sub->add_option("--gis", cfg.gis,
                  "imaginary-sphere basis: full | paravector | plane:<unit>");
  sub->add_option("--domain", cfg.domain,
                  "plane domain: disk:c,r | annulus:c,r1,r2 | ellipse:c,ax,ay");
  sub->add_option("--function", cfg.function,
                  "slice function: poly:[c0,c1,...] | stem:<name>");
  sub->add_option("--points", cfg.points,
                  "';'-separated element literals (x@w pairs for kernel-eval)");
  sub->add_option("--grid", cfg.grid, "node counts Nt,Ntheta,Nr,Ns");
  sub->add_option("--out", cfg.out, "CSV output path (default stdout)");
  sub->add_option("--tol", cfg.tol, "pass tolerance (0: command default)");
  sub->add_option("--seed", cfg.seed, "RNG seed for sampled checks");
  sub->add_flag("--timing", cfg.timing, "append wall-clock column");
  sub->add_option("--offsets", cfg.offsets,
                  "comma-separated boundary approach offsets");
  sub->add_option("--lemma-n", cfg.lemma_n, "max angle count for lemma-suite");
  sub->add_option("--lemma-samples", cfg.lemma_samples,
                  "random samples per angle count");
}

}  // namespace

int main(int argc, char** argv) {
  slicecauchy::RunConfig cfg;

  // Apply --config before CLI11 parses the flags, so explicit flags win.
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    try {
      if (arg == "--config" && i + 1 < argc)
        slicecauchy::load_config_file(cfg, argv[i + 1]);
      else if (arg.rfind("--config=", 0) == 0)
        slicecauchy::load_config_file(cfg, arg.substr(9));
    } catch (const std::exception& e) {
      std::cerr << "slice-cauchy: " << e.what() << "\n";
      return 2;
    }
  }

  CLI::App app{
      "Cauchy reconstruction and jump verification for slice functions"};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       std::string("slice-cauchy ") + slicecauchy::kVersion);

  const struct {
    const char* name;
    const char* help;
  } cmds[] = {
      {"verify-cauchy",
       "reconstruct points from boundary and volume data, compare with f"},
      {"verify-jump",
       "extrapolate interior/exterior transforms to boundary points"},
      {"extension-test",
       "decide slice-regular extension from the exterior transform"},
      {"lemma-suite", "polar Jacobian identities and hemisphere integrals"},
      {"kernel-eval", "evaluate the normalized kernel at x@w pairs"},
  };
  for (const auto& c : cmds) add_common_flags(app.add_subcommand(c.name, c.help), cfg);

  CLI11_PARSE(app, argc, argv);

  cfg.command = app.get_subcommands().front()->get_name();
  try {
    return slicecauchy::run_command(cfg);
  } catch (const std::exception& e) {
    std::cerr << "slice-cauchy: " << e.what() << "\n";
    return 2;
  }
}
