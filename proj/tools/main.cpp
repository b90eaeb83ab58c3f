#include <iostream>

#include "CLI11.hpp"
#include "diracsol/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Solitary-wave lab: solve, verify and boost Dirac-type standing waves"};
  app.require_subcommand(1, 1);
  diracsol::CommandOptions opt;
  const char* names[] = {"solve", "verify", "boost", "md-report", "kgd-solve"};
  const char* help[] = {"solve the radial profile and write it", "check identities on a profile",
                        "check E_v, P_v, Q_v on boosted waves", "Maxwell-Dirac field report",
                        "self-consistent Klein-Gordon-Dirac solve"};
  for (int i = 0; i < 5; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--config", opt.config_path, "run configuration (JSON)")->required();
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--format", opt.format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::NonNegativeNumber);
    if (i > 0 && i < 4) sub->add_option("--profile", opt.profile_path, "profile file");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : diracsol::kExitConfig;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  return diracsol::run_command(name, opt, std::cout, std::cerr);
}
