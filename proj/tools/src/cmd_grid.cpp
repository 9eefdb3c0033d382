#include <chrono>
#include <cmath>
#include <iostream>

#include "commands.hpp"
#include "husimi/errors.hpp"
#include "husimi/grid.hpp"
#include "tool_common.hpp"

namespace husimi::tools {

namespace {

void fill_default_ranges(const PhysicalScenario& s, GridSpec& spec,
                         const std::vector<double>& x_range, const std::vector<double>& v_range) {
  const double ax0 = std::abs(s.x0);
  if (x_range.empty()) {
    spec.x_min = 0.5 * ax0;
    spec.x_max = 1.5 * ax0;
  } else {
    spec.x_min = x_range[0];
    spec.x_max = x_range[1];
  }
  if (v_range.empty()) {
    spec.v_min = 0.5 * s.v0;
    spec.v_max = 1.5 * s.v0;
  } else {
    spec.v_min = v_range[0];
    spec.v_max = v_range[1];
  }
}

}  // namespace

int cmd_grid(const GridOptions& opt) {
  const PhysicalScenario s = load_scenario_file(opt.scenario_file);
  const TimeGrating grating = load_grating_file(opt.grating_file);

  GridSpec spec;
  spec.method = grid_method_from_name(opt.method);
  spec.nx = opt.nx;
  spec.nv = opt.nv;
  fill_default_ranges(s, spec, opt.x_range, opt.v_range);
  validate_grid_spec(spec);

  const auto t_start = std::chrono::steady_clock::now();
  const HusimiGrid grid = compute_grid(s, grating, spec, opt.threads);
  const auto t_end = std::chrono::steady_clock::now();
  const double seconds = std::chrono::duration<double>(t_end - t_start).count();

  // Report goes to stdout when the CSV has its own file, to stderr when the
  // CSV occupies stdout.
  std::ostream& rep = opt.out_file.empty() ? std::cerr : std::cout;
  rep << "command: grid\n";
  print_input_echo(rep, s, grating);
  rep << "method: " << grid_method_name(spec.method) << "\n";
  rep << "grid: nx=" << spec.nx << " nv=" << spec.nv << " x=[" << spec.x_min << ", " << spec.x_max
      << "] m v=[" << spec.v_min << ", " << spec.v_max << "] m/s\n";
  for (const auto& [key, value] : grid.meta) rep << "meta." << key << ": " << value << "\n";
  rep << "elapsed_s: " << seconds << "\n";

  if (opt.out_file.empty()) {
    std::cout << grid_to_csv(grid);
  } else {
    write_grid_csv(grid, opt.out_file);
    rep << "csv: " << opt.out_file << "\n";
  }
  return kExitOk;
}

}  // namespace husimi::tools
