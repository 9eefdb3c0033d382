#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "husimi/errors.hpp"
#include "tool_common.hpp"

namespace ht = husimi::tools;

int main(int argc, char** argv) {
  CLI::App app{"Phase-space distributions of matter waves transmitted through "
               "time-modulated absorbing barriers"};
  app.require_subcommand(1);

  ht::GridOptions grid_opt;
  CLI::App* grid = app.add_subcommand("grid", "Compute a phase-space grid and emit CSV");
  grid->add_option("--scenario", grid_opt.scenario_file, "Scenario config (JSON)")->required();
  grid->add_option("--grating", grid_opt.grating_file, "Grating config (JSON)")->required();
  grid->add_option("--method", grid_opt.method,
                   "quadrature_exact | quadrature_frozen | residue | slit");
  grid->add_option("--nx", grid_opt.nx, "Columns (x samples)");
  grid->add_option("--nv", grid_opt.nv, "Rows (v samples)");
  grid->add_option("--x-range", grid_opt.x_range, "x_tilde range LO HI in meters")
      ->expected(2);
  grid->add_option("--v-range", grid_opt.v_range, "v_tilde range LO HI in m/s")->expected(2);
  grid->add_option("--out", grid_opt.out_file, "CSV path (default: stdout)");
  grid->add_option("--threads", grid_opt.threads, "Worker threads (0 = hardware)");

  ht::FringesOptions fr_opt;
  CLI::App* fringes =
      app.add_subcommand("fringes", "Predict fringe positions and locate extrema numerically");
  fringes->add_option("--scenario", fr_opt.scenario_file, "Scenario config (JSON)")->required();
  fringes->add_option("--grating", fr_opt.grating_file, "Grating config (JSON)")->required();
  fringes->add_option("--method", fr_opt.method,
                      "Evaluator: slit | quadrature_exact | quadrature_frozen | residue");
  fringes->add_option("--k-min", fr_opt.k_min, "Smallest fringe index");
  fringes->add_option("--k-max", fr_opt.k_max, "Largest fringe index");
  fringes->add_option("--samples", fr_opt.samples, "Line samples before refinement (>= 100)");
  fringes->add_option("--x-range", fr_opt.x_range, "Search range LO HI in meters")->expected(2);

  ht::ValidateOptions val_opt;
  CLI::App* validate =
      app.add_subcommand("validate", "Run the cross-method validation suite");
  validate->add_option("--scenario", val_opt.scenario_file, "Scenario config (JSON)")->required();
  validate->add_option("--grating", val_opt.grating_file, "Grating config (JSON)")->required();
  validate
      ->add_flag("--corrupt-aj", val_opt.corrupt_aj,
                 "Fault injection: perturb one partial-fraction coefficient")
      ->group("");  // hidden from --help

  ht::BoundsOptions bd_opt;
  CLI::App* bounds = app.add_subcommand("bounds", "Report tail error bounds across a nu sweep");
  bounds->add_option("--scenario", bd_opt.scenario_file, "Scenario config (JSON)")->required();
  bounds->add_option("--grating", bd_opt.grating_file, "Grating config (JSON)")->required();
  bounds->add_option("--x", bd_opt.x_tilde, "Detection x_tilde in meters (default |x0|)");
  bounds->add_option("--v", bd_opt.v_tilde, "Detection v_tilde in m/s (default v0)");
  bounds->add_option("--sweep-steps", bd_opt.sweep_steps, "Factor-2 sweep length (default 8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ht::kExitInputError;
  }

  try {
    if (grid->parsed()) return ht::cmd_grid(grid_opt);
    if (fringes->parsed()) return ht::cmd_fringes(fr_opt);
    if (validate->parsed()) return ht::cmd_validate(val_opt);
    if (bounds->parsed()) return ht::cmd_bounds(bd_opt);
  } catch (const husimi::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return ht::kExitInputError;
  } catch (const husimi::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return ht::kExitNumericFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ht::kExitNumericFailure;
  }
  return ht::kExitInputError;
}
