#include "husimi/grid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <thread>

#include "husimi/errors.hpp"
#include "husimi/gaussian.hpp"
#include "husimi/quadrature.hpp"
#include "husimi/residue.hpp"
#include "husimi/slitforms.hpp"

namespace husimi {

GridMethod grid_method_from_name(const std::string& name) {
  if (name == "quadrature_exact") return GridMethod::quadrature_exact;
  if (name == "quadrature_frozen") return GridMethod::quadrature_frozen;
  if (name == "residue") return GridMethod::residue;
  if (name == "slit") return GridMethod::slit;
  throw input_error("unknown grid method '" + name +
                    "' (expected quadrature_exact, quadrature_frozen, residue, or slit)");
}

std::string grid_method_name(GridMethod m) {
  switch (m) {
    case GridMethod::quadrature_exact: return "quadrature_exact";
    case GridMethod::quadrature_frozen: return "quadrature_frozen";
    case GridMethod::residue: return "residue";
    case GridMethod::slit: return "slit";
  }
  throw input_error("unknown grid method enum value");
}

void validate_grid_spec(const GridSpec& spec) {
  if (!(spec.x_min > 0.0) || !(spec.x_max > spec.x_min))
    throw input_error("grid spec: require 0 < x_min < x_max (detection quadrant)");
  if (!(spec.v_min > 0.0) || !(spec.v_max > spec.v_min))
    throw input_error("grid spec: require 0 < v_min < v_max (detection quadrant)");
  if (spec.nx < 2 || spec.nv < 2) throw input_error("grid spec: nx and nv must be >= 2");
  if (spec.cell_cap < 1) throw input_error("grid spec: cell cap must be >= 1");
  if (static_cast<long long>(spec.nx) * spec.nv > spec.cell_cap)
    throw input_error("grid spec: nx*nv = " + std::to_string(
                          static_cast<long long>(spec.nx) * spec.nv) +
                      " exceeds the cell cap " + std::to_string(spec.cell_cap));
}

namespace {

double eval_point(const PhysicalScenario& s, const TimeGrating& grating, GridMethod method,
                  const PhaseSpacePoint& p, int& bessel_terms, double& tail_bound) {
  switch (method) {
    case GridMethod::quadrature_exact: {
      const QuadratureResult r = husimi_amplitude_exact(s, p, grating, QuadratureConfig{});
      return std::norm(r.value);
    }
    case GridMethod::quadrature_frozen: {
      const QuadratureResult r = f_froz_quadrature(s, p, grating, QuadratureConfig{});
      return std::norm(r.value);
    }
    case GridMethod::residue: {
      const FrozenConstants fc = frozen_constants(s, p);
      auto [value, diag] = f_froz_analytic(fc, s, p, grating, 1e-12);
      bessel_terms = std::max(bessel_terms, diag.bessel_terms_used);
      tail_bound = std::max(tail_bound, diag.i_tail_bound);
      const double la = value.log_abs();
      return std::isinf(la) && la < 0.0 ? 0.0 : std::exp(2.0 * la);
    }
    case GridMethod::slit: {
      const ScaledComplex f = f_multislit(s, p, grating);
      const double la = f.log_abs();
      return std::isinf(la) && la < 0.0 ? 0.0 : std::exp(2.0 * la);
    }
  }
  throw input_error("unknown grid method enum value");
}

}  // namespace

HusimiGrid compute_grid(const PhysicalScenario& s, const TimeGrating& grating,
                        const GridSpec& spec, int threads) {
  validate_scenario(s);
  validate_grating(grating);
  validate_grid_spec(spec);
  if (threads < 0) throw input_error("compute_grid: threads must be >= 0");

  HusimiGrid grid;
  grid.spec = spec;
  grid.values.assign(static_cast<size_t>(spec.nx) * static_cast<size_t>(spec.nv), 0.0);

  const double dx = (spec.x_max - spec.x_min) / (spec.nx - 1);
  const double dv = (spec.v_max - spec.v_min) / (spec.nv - 1);

  int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  n_threads = std::min(n_threads, spec.nv);

  std::atomic<int> next_row{0};
  std::vector<int> bessel_terms(static_cast<size_t>(n_threads), 0);
  std::vector<double> tail_bounds(static_cast<size_t>(n_threads), 0.0);
  std::vector<std::exception_ptr> errors(static_cast<size_t>(n_threads));

  auto worker = [&](int tid) {
    try {
      while (true) {
        const int iv = next_row.fetch_add(1);
        if (iv >= spec.nv) break;
        const double v = spec.v_min + dv * iv;
        for (int ix = 0; ix < spec.nx; ++ix) {
          PhaseSpacePoint p;
          p.x_tilde = spec.x_min + dx * ix;
          p.v_tilde = v;
          const double value =
              eval_point(s, grating, spec.method, p, bessel_terms[static_cast<size_t>(tid)],
                         tail_bounds[static_cast<size_t>(tid)]);
          if (!std::isfinite(value) || value < 0.0)
            throw numeric_error("compute_grid: non-finite or negative F at x=" +
                                std::to_string(p.x_tilde) + ", v=" + std::to_string(p.v_tilde));
          grid.values[static_cast<size_t>(iv) * static_cast<size_t>(spec.nx) +
                      static_cast<size_t>(ix)] = value;
        }
      }
    } catch (...) {
      errors[static_cast<size_t>(tid)] = std::current_exception();
    }
  };

  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_threads));
    for (int tid = 0; tid < n_threads; ++tid) pool.emplace_back(worker, tid);
    for (std::thread& th : pool) th.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  grid.meta["method"] = grid_method_name(spec.method);
  if (spec.method == GridMethod::residue) {
    grid.meta["max_bessel_terms"] =
        std::to_string(*std::max_element(bessel_terms.begin(), bessel_terms.end()));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", *std::max_element(tail_bounds.begin(), tail_bounds.end()));
    grid.meta["max_tail_bound"] = buf;
  }
  return grid;
}

std::string grid_to_csv(const HusimiGrid& grid) {
  std::string out = "x_tilde_m,v_tilde_mps,F\n";
  out.reserve(out.size() + grid.values.size() * 72);
  const GridSpec& spec = grid.spec;
  const double dx = (spec.x_max - spec.x_min) / (spec.nx - 1);
  const double dv = (spec.v_max - spec.v_min) / (spec.nv - 1);
  char buf[96];
  for (int iv = 0; iv < spec.nv; ++iv) {
    const double v = spec.v_min + dv * iv;
    for (int ix = 0; ix < spec.nx; ++ix) {
      const double x = spec.x_min + dx * ix;
      const double value = grid.values[static_cast<size_t>(iv) * static_cast<size_t>(spec.nx) +
                                       static_cast<size_t>(ix)];
      std::snprintf(buf, sizeof buf, "%.16e,%.16e,%.16e\n", x, v, value);
      out += buf;
    }
  }
  return out;
}

void write_grid_csv(const HusimiGrid& grid, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw input_error("cannot open '" + path + "' for writing");
  const std::string csv = grid_to_csv(grid);
  file.write(csv.data(), static_cast<std::streamsize>(csv.size()));
  if (!file) throw input_error("failed writing grid CSV to '" + path + "'");
}

}  // namespace husimi
