#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>

#include "commands.hpp"
#include "husimi/errors.hpp"
#include "husimi/gaussian.hpp"
#include "husimi/quadrature.hpp"
#include "husimi/residue.hpp"
#include "husimi/slitforms.hpp"
#include "tool_common.hpp"

namespace husimi::tools {

namespace {

std::function<double(const PhaseSpacePoint&)> make_evaluator(const PhysicalScenario& s,
                                                             const TimeGrating& grating,
                                                             const std::string& method) {
  if (method == "slit") {
    if (grating.slits.size() == 2) {
      const double nu = grating.slits[0].nu;
      const double t0 = grating.slits[0].t_op;
      const double t1 = grating.slits[1].t_op;
      return [=, &s](const PhaseSpacePoint& p) {
        return husimi_2slit_structured(s, p, nu, t0, t1).value;
      };
    }
    return [&](const PhaseSpacePoint& p) {
      const ScaledComplex f = f_multislit(s, p, grating);
      const double la = f.log_abs();
      return std::isfinite(la) ? std::exp(2.0 * la) : 0.0;
    };
  }
  if (method == "quadrature_exact") {
    return [&](const PhaseSpacePoint& p) {
      QuadratureConfig cfg;
      return std::norm(husimi_amplitude_exact(s, p, grating, cfg).value);
    };
  }
  if (method == "quadrature_frozen") {
    return [&](const PhaseSpacePoint& p) {
      QuadratureConfig cfg;
      return std::norm(f_froz_quadrature(s, p, grating, cfg).value);
    };
  }
  if (method == "residue") {
    return [&](const PhaseSpacePoint& p) {
      const FrozenConstants fc = frozen_constants(s, p);
      const auto [f, diag] = f_froz_analytic(fc, s, p, grating, 1e-12);
      (void)diag;
      const double la = f.log_abs();
      return std::isfinite(la) ? std::exp(2.0 * la) : 0.0;
    };
  }
  throw input_error("fringes: unknown method '" + method +
                    "' (expected slit, quadrature_exact, quadrature_frozen, or residue)");
}

bool symmetric_two_slit(const PhysicalScenario& s, const TimeGrating& g, std::string& why) {
  if (g.slits.size() != 2) {
    why = "grating has " + std::to_string(g.slits.size()) + " slit(s), need exactly 2";
    return false;
  }
  if (g.slits[0].n != 2 || g.slits[1].n != 2) {
    why = "fringe predictions require n = 2 slits";
    return false;
  }
  const double rel_nu = std::abs(g.slits[0].nu - g.slits[1].nu) / g.slits[0].nu;
  if (rel_nu > 1e-12) {
    why = "slit sharpness differs between the slits";
    return false;
  }
  const double t_c = s.t_c();
  if (std::abs(g.slits[0].t_op + g.slits[1].t_op - 2.0 * t_c) > 1e-9 * t_c) {
    why = "slits are not symmetric about t_c";
    return false;
  }
  return true;
}

void print_extrema(std::ostream& os, const std::vector<LineExtremum>& found) {
  os << "extrema_found: " << found.size() << "\n";
  for (const LineExtremum& e : found) {
    char line[128];
    std::snprintf(line, sizeof(line), "  %s x_tilde=%.9e m v_tilde=%.9e m/s\n",
                  e.is_max ? "max" : "min", e.x_tilde, e.v_tilde);
    os << line;
  }
}

}  // namespace

int cmd_fringes(const FringesOptions& opt) {
  const PhysicalScenario s = load_scenario_file(opt.scenario_file);
  const TimeGrating grating = load_grating_file(opt.grating_file);
  if (!opt.x_range.empty() && !(opt.x_range[0] > 0.0 && opt.x_range[1] > opt.x_range[0]))
    throw input_error("fringes: --x-range must satisfy 0 < lo < hi");

  std::ostream& os = std::cout;
  os << "command: fringes\n";
  print_input_echo(os, s, grating);

  const auto evaluate = make_evaluator(s, grating, opt.method);
  os << "method: " << opt.method << "\n";

  std::string why;
  if (!symmetric_two_slit(s, grating, why)) {
    // No closed-form fringe ladder for this grating; report raw extrema.
    os << "note: " << why << "; emitting peaks-only report\n";
    const double ax0 = std::abs(s.x0);
    const double lo = opt.x_range.empty() ? 0.5 * ax0 : opt.x_range[0];
    const double hi = opt.x_range.empty() ? 1.5 * ax0 : opt.x_range[1];
    print_extrema(os, find_peaks_on_line(s, lo, hi, opt.samples, evaluate));
    return kExitOk;
  }

  const double t_op0 = grating.slits[0].t_op;
  const double t_op1 = grating.slits[1].t_op;
  const FringeLine line = fringe_line(s, t_op0, t_op1);
  os << "line: v_tilde = alpha x_tilde, alpha=" << line.alpha
     << " 1/s, alpha_exact=" << line.alpha_exact << " 1/s, epsilon=" << line.epsilon << "\n";
  if (line.epsilon_large)
    os << "note: epsilon > 0.3, fringe-position predictions degrade at this opening split\n";

  const FringeSet fringes = fringe_positions(s, t_op0, t_op1, opt.k_min, opt.k_max);
  for (int k : fringes.omitted) os << "omitted: k=" << k << " (radicand not positive)\n";
  if (fringes.points.empty()) throw input_error("fringes: no representable k in the range");

  double lo, hi;
  if (!opt.x_range.empty()) {
    lo = opt.x_range[0];
    hi = opt.x_range[1];
  } else if (fringes.points.size() >= 2) {
    const auto& pts = fringes.points;
    const double first_gap = pts[1].x_tilde - pts[0].x_tilde;
    const double last_gap = pts[pts.size() - 1].x_tilde - pts[pts.size() - 2].x_tilde;
    lo = std::max(pts.front().x_tilde - 0.6 * first_gap, 0.25 * pts.front().x_tilde);
    hi = pts.back().x_tilde + 0.6 * last_gap;
  } else {
    lo = 0.5 * fringes.points.front().x_tilde;
    hi = 1.5 * fringes.points.front().x_tilde;
  }

  const std::vector<LineExtremum> found = find_peaks_on_line(s, lo, hi, opt.samples, evaluate);

  os << "table: k parity x_pred_m v_pred_mps x_found_m rel_offset\n";
  for (const FringePoint& pt : fringes.points) {
    // Nearest numeric extremum of the matching type.
    std::optional<double> best;
    for (const LineExtremum& e : found) {
      if (e.is_max != pt.bright) continue;
      if (!best || std::abs(e.x_tilde - pt.x_tilde) < std::abs(*best - pt.x_tilde))
        best = e.x_tilde;
    }
    char line_buf[160];
    if (best) {
      std::snprintf(line_buf, sizeof(line_buf), "  %+d %s %.9e %.9e %.9e %.3e\n", pt.k,
                    pt.bright ? "bright" : "dark", pt.x_tilde, pt.v_tilde, *best,
                    std::abs(*best - pt.x_tilde) / pt.x_tilde);
    } else {
      std::snprintf(line_buf, sizeof(line_buf), "  %+d %s %.9e %.9e none -\n", pt.k,
                    pt.bright ? "bright" : "dark", pt.x_tilde, pt.v_tilde);
    }
    os << line_buf;
  }
  print_extrema(os, found);
  return kExitOk;
}

}  // namespace husimi::tools
