#pragma once

#include <map>
#include <string>
#include <vector>

#include "husimi/aperture.hpp"
#include "husimi/scenario.hpp"

namespace husimi {

enum class GridMethod { quadrature_exact, quadrature_frozen, residue, slit };

GridMethod grid_method_from_name(const std::string& name);
std::string grid_method_name(GridMethod m);

struct GridSpec {
  double x_min = 0.0;  // m
  double x_max = 0.0;
  double v_min = 0.0;  // m/s
  double v_max = 0.0;
  int nx = 2;
  int nv = 2;
  GridMethod method = GridMethod::quadrature_exact;
  // Refuses runs whose cell count exceeds this; grids are meant for figures,
  // not bulk archives.
  long long cell_cap = 4'000'000;
};

void validate_grid_spec(const GridSpec& spec);

// Row-major F values, v outer and x inner, plus a textual diagnostics
// summary (method, worst-case series depth, largest tail bound, ...).
struct HusimiGrid {
  GridSpec spec;
  std::vector<double> values;
  std::map<std::string, std::string> meta;
};

// Evaluates F = |amplitude|^2 on the grid with the requested method.
// threads = 0 picks the hardware concurrency; rows are distributed across
// threads and written to disjoint slots, so results are identical for every
// thread count.
HusimiGrid compute_grid(const PhysicalScenario& s, const TimeGrating& grating,
                        const GridSpec& spec, int threads = 0);

// CSV with header `x_tilde_m,v_tilde_mps,F`, rows in v-outer x-inner order,
// every number printed as 17-significant-digit scientific notation so the
// output is byte-deterministic and round-trip safe.
std::string grid_to_csv(const HusimiGrid& grid);
void write_grid_csv(const HusimiGrid& grid, const std::string& path);

}  // namespace husimi
