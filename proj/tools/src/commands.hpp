#pragma once

#include <string>
#include <vector>

namespace husimi::tools {

struct GridOptions {
  std::string scenario_file;
  std::string grating_file;
  std::string method = "quadrature_exact";
  int nx = 200;
  int nv = 200;
  std::vector<double> x_range;  // empty: [0.5, 1.5] |x0|
  std::vector<double> v_range;  // empty: [0.5, 1.5] v0
  std::string out_file;         // empty: CSV to stdout, report to stderr
  int threads = 0;              // 0: hardware concurrency
};

struct FringesOptions {
  std::string scenario_file;
  std::string grating_file;
  std::string method = "slit";  // evaluator for the numeric extremum search
  int k_min = -4;
  int k_max = 4;
  int samples = 600;
  std::vector<double> x_range;  // empty: derived from the fringe predictions
};

struct ValidateOptions {
  std::string scenario_file;
  std::string grating_file;
  // Fault-injection hook: perturbs one partial-fraction coefficient before
  // the reconstruction check, which must then fail loudly.
  bool corrupt_aj = false;
};

struct BoundsOptions {
  std::string scenario_file;
  std::string grating_file;
  double x_tilde = 0.0;  // 0: defaults to |x0|
  double v_tilde = 0.0;  // 0: defaults to v0
  int sweep_steps = 8;   // factor-2 steps; 8 steps span two decades
};

int cmd_grid(const GridOptions& opt);
int cmd_fringes(const FringesOptions& opt);
int cmd_validate(const ValidateOptions& opt);
int cmd_bounds(const BoundsOptions& opt);

}  // namespace husimi::tools
