#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "psiphi/commands.hpp"
#include "psiphi/config.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::string raster_path;
  std::optional<std::uint64_t> seed;
  bool assume_closed_graph = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "configuration file (JSON)")
      ->required();
  cmd->add_option("--out", args.out_path, "output CSV path");
  cmd->add_option("--raster", args.raster_path, "output PGM path");
  cmd->add_option("--seed", args.seed, "sampling seed");
  cmd->add_flag("--assume-closed-graph", args.assume_closed_graph,
                "assert the closed-graph hypothesis");
}

psiphi::RunConfig load(const CommonArgs& args) {
  psiphi::RunConfig cfg = psiphi::load_config_file(args.config_path);
  if (!args.out_path.empty()) cfg.output.csv = args.out_path;
  if (!args.raster_path.empty()) cfg.output.raster = args.raster_path;
  if (args.seed) cfg.solver.seed = *args.seed;
  if (args.assume_closed_graph) cfg.assume_closed_graph = true;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed points, coupled fixed points, and fractal attractors "
               "of generalized (psi, phi)-contractions"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string file_a, file_b;

  CLI::App* check = app.add_subcommand("check", "validate control-function "
                                                "conditions and sampled "
                                                "contraction bounds");
  CLI::App* solve = app.add_subcommand("solve", "plain Picard iteration");
  CLI::App* solve_coupled =
      app.add_subcommand("solve-coupled", "coupled fixed point iteration");
  CLI::App* solve_extended = app.add_subcommand(
      "solve-extended", "extended coupled (T, S) iteration");
  CLI::App* attractor =
      app.add_subcommand("attractor", "IFS attractor iteration");
  CLI::App* coupled_attractor = app.add_subcommand(
      "coupled-attractor", "coupled fractal iteration on the product space");
  CLI::App* hausdorff = app.add_subcommand(
      "hausdorff", "Hausdorff distance between two CSV point clouds");

  for (CLI::App* cmd : {check, solve, solve_coupled, solve_extended, attractor,
                        coupled_attractor, hausdorff})
    add_common(cmd, args);
  hausdorff->add_option("file_a", file_a, "first point cloud")->required();
  hausdorff->add_option("file_b", file_b, "second point cloud")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? psiphi::kExitOk : psiphi::kExitUsage;
  }

  try {
    psiphi::RunConfig cfg = load(args);
    if (check->parsed()) return psiphi::cmd_check(cfg, std::cout);
    if (solve->parsed())
      return psiphi::cmd_solve(cfg, psiphi::SolveMode::Plain, std::cout);
    if (solve_coupled->parsed())
      return psiphi::cmd_solve(cfg, psiphi::SolveMode::Coupled, std::cout);
    if (solve_extended->parsed())
      return psiphi::cmd_solve(cfg, psiphi::SolveMode::Extended, std::cout);
    if (attractor->parsed())
      return psiphi::cmd_attractor(cfg, false, std::cout);
    if (coupled_attractor->parsed())
      return psiphi::cmd_attractor(cfg, true, std::cout);
    if (hausdorff->parsed())
      return psiphi::cmd_hausdorff(cfg, file_a, file_b, std::cout);
  } catch (const psiphi::ConfigError& e) {
    std::cerr << "error=config field=" << e.field << " message=\"" << e.what()
              << "\"\n";
    return psiphi::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error=runtime message=\"" << e.what() << "\"\n";
    return psiphi::kExitUsage;
  }
  return psiphi::kExitUsage;
}
