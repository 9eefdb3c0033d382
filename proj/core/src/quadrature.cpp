#include "husimi/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "husimi/errors.hpp"

namespace husimi {

namespace {

// 15-point Kronrod nodes (positive half, descending) and weights, with the
// embedded 7-point Gauss rule on the odd-indexed nodes plus the center.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  std::complex<double> val{0.0, 0.0};
  double err = 0.0;
};

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

Panel eval_panel(const std::function<std::complex<double>(double)>& fn, double a, double b,
                 double& max_abs_f) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const std::complex<double> fc = fn(c);
  max_abs_f = std::max(max_abs_f, std::abs(fc));
  std::complex<double> resk = kWgk[7] * fc;
  std::complex<double> resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const std::complex<double> f1 = fn(c - dx);
    const std::complex<double> f2 = fn(c + dx);
    max_abs_f = std::max(max_abs_f, std::max(std::abs(f1), std::abs(f2)));
    const std::complex<double> fsum = f1 + f2;
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.val = resk * h;
  p.err = std::abs((resk - resg) * h);
  return p;
}

}  // namespace

QuadratureResult integrate_gk15(const std::function<std::complex<double>(double)>& fn,
                                double a, double b, const QuadratureConfig& cfg) {
  if (!std::isfinite(a) || !std::isfinite(b) || a > b)
    throw input_error("integrate_gk15: bounds must be finite with a <= b");
  if (!(cfg.rel_tol > 0.0)) throw input_error("integrate_gk15: rel_tol must be positive");
  if (cfg.abs_tol < 0.0) throw input_error("integrate_gk15: abs_tol must be >= 0");
  if (cfg.max_subdivisions < 1)
    throw input_error("integrate_gk15: max_subdivisions must be >= 1");

  QuadratureResult res;
  if (a == b) {
    res.converged = true;
    return res;
  }

  // Initial partition: breakpoints strictly inside (a, b), deduplicated.
  std::vector<double> cuts;
  cuts.push_back(a);
  std::vector<double> bp = cfg.forced_breakpoints;
  std::sort(bp.begin(), bp.end());
  for (double x : bp) {
    if (x > a && x < b && x - cuts.back() > 1e-14 * (b - a)) cuts.push_back(x);
  }
  if (b - cuts.back() <= 1e-14 * (b - a)) cuts.back() = b;
  else cuts.push_back(b);

  double max_abs_f = 0.0;
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
  std::complex<double> total_val{0.0, 0.0};
  double total_err = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = eval_panel(fn, cuts[i], cuts[i + 1], max_abs_f);
    total_val += p.val;
    total_err += p.err;
    queue.push(p);
  }

  // Panels narrower than this cannot be meaningfully bisected in double
  // precision; their error is kept but they are never refined again.
  const double min_width =
      16.0 * std::numeric_limits<double>::epsilon() * std::max({std::abs(a), std::abs(b), b - a});
  double frozen_err = 0.0;
  int splits = 0;
  bool converged = false;
  while (true) {
    const double abs_eff = (cfg.abs_tol > 0.0) ? cfg.abs_tol : 1e-14 * max_abs_f * (b - a);
    const double tol = cfg.rel_tol * std::abs(total_val) + abs_eff;
    if (total_err <= tol) {
      converged = true;
      break;
    }
    if (splits >= cfg.max_subdivisions || queue.empty()) break;
    Panel worst = queue.top();
    queue.pop();
    if (worst.b - worst.a < min_width) {
      frozen_err += worst.err;
      total_err -= worst.err;  // moved to the frozen bucket, still reported
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = eval_panel(fn, worst.a, mid, max_abs_f);
    Panel right = eval_panel(fn, mid, worst.b, max_abs_f);
    total_val += left.val + right.val - worst.val;
    total_err += left.err + right.err - worst.err;
    queue.push(left);
    queue.push(right);
    ++splits;
  }

  res.value = total_val;
  res.error_estimate = total_err + frozen_err;
  res.subdivisions_used = splits;
  const double abs_eff = (cfg.abs_tol > 0.0) ? cfg.abs_tol : 1e-14 * max_abs_f * (b - a);
  res.converged = converged && res.error_estimate <= cfg.rel_tol * std::abs(res.value) + abs_eff;
  return res;
}

namespace {

// Every slit contributes breakpoints at t_op and t_op +- 1/nu: the aperture
// has width-1/nu features that uniform panels can miss when nu t is large.
void add_slit_breakpoints(const TimeGrating& grating, double t, QuadratureConfig& cfg) {
  for (const ApodizationBarrier& slit : grating.slits) {
    const double w = 1.0 / slit.nu;
    for (double x : {slit.t_op - w, slit.t_op, slit.t_op + w}) {
      if (x > 0.0 && x < t) cfg.forced_breakpoints.push_back(x);
    }
  }
}

}  // namespace

QuadratureResult husimi_amplitude_exact(const PhysicalScenario& s, const PhaseSpacePoint& p,
                                        const TimeGrating& grating, const QuadratureConfig& cfg) {
  validate_scenario(s);
  validate_point(p);
  validate_grating(grating);
  const double t = s.t;
  const std::complex<double> alpha_t_tilde = alpha_tau(s, p.t_tilde());
  const std::complex<double> alpha_t_c = alpha_tau(s, s.t_c());

  QuadratureConfig local = cfg;
  add_slit_breakpoints(grating, t, local);

  auto integrand = [&](double tau) -> std::complex<double> {
    const std::complex<double> a_rev = alpha_tau(s, t - tau);
    const std::complex<double> a_fwd = alpha_tau(s, tau);
    const double chi = chi_eval(grating, tau);
    const std::complex<double> psi_rev = psi_free(s, p.x_tilde, -p.v_tilde, 0.0, t - tau);
    const std::complex<double> psi_fwd = psi_free(s, s.x0, s.v0, 0.0, tau);
    return (p.v_tilde * a_rev / alpha_t_tilde + s.v0 * a_fwd / alpha_t_c) * (0.5 * chi) *
           psi_rev * psi_fwd;
  };
  return integrate_gk15(integrand, 0.0, t, local);
}

QuadratureResult husimi_amplitude_exact(const PhysicalScenario& s, const PhaseSpacePoint& p,
                                        const ApodizationBarrier& barrier,
                                        const QuadratureConfig& cfg) {
  TimeGrating g;
  g.slits = {barrier};
  return husimi_amplitude_exact(s, p, g, cfg);
}

QuadratureResult f_froz_quadrature(const PhysicalScenario& s, const PhaseSpacePoint& p,
                                   const TimeGrating& grating, const QuadratureConfig& cfg) {
  validate_scenario(s);
  validate_point(p);
  validate_grating(grating);
  const FrozenConstants fc = frozen_constants(s, p);

  QuadratureConfig local = cfg;
  add_slit_breakpoints(grating, s.t, local);

  // The large negative log-prefactor is folded into phi before
  // exponentiation; on the real axis Re(phi) <= 0, so exp never overflows.
  auto integrand = [&](double tau) -> std::complex<double> {
    return fc.omega_prefactor * chi_eval(grating, tau) * std::exp(phi(fc, tau));
  };
  return integrate_gk15(integrand, 0.0, s.t, local);
}

QuadratureResult f_froz_quadrature(const PhysicalScenario& s, const PhaseSpacePoint& p,
                                   const ApodizationBarrier& barrier,
                                   const QuadratureConfig& cfg) {
  TimeGrating g;
  g.slits = {barrier};
  return f_froz_quadrature(s, p, g, cfg);
}

std::complex<double> contour_circle_integral(
    const std::function<std::complex<double>(std::complex<double>)>& fn,
    std::complex<double> center, double radius, int samples) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw input_error("contour_circle_integral: radius must be positive and finite");
  if (samples < 16) throw input_error("contour_circle_integral: samples must be >= 16");
  if (!std::isfinite(center.real()) || !std::isfinite(center.imag()))
    throw input_error("contour_circle_integral: center must be finite");

  // (1 / 2 pi i) * integral = (r / N) * sum_k f(c + r e^{i theta_k}) e^{i theta_k}.
  std::complex<double> acc{0.0, 0.0};
  for (int k = 0; k < samples; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / samples;
    const std::complex<double> e = std::polar(1.0, theta);
    acc += fn(center + radius * e) * e;
  }
  return acc * (radius / static_cast<double>(samples));
}

}  // namespace husimi
