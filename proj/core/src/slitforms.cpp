#include "husimi/slitforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "husimi/errors.hpp"
#include "husimi/gaussian.hpp"

namespace husimi {

namespace {

double sq(double x) { return x * x; }
long double sql(long double x) { return x * x; }

// The slit exponents combine terms of size (m sigma v / hbar)^2 (~1e4 for
// the physical parameter sets) that cancel down to O(1); assembling them in
// extended precision keeps the final exponents accurate to ~1e-15 absolute,
// which the closed-form equivalence checks rely on.
struct GammaParts {
  long double re0, im0, re1, im1;
};

GammaParts gamma_parts_ld(const PhysicalScenario& s, const PhaseSpacePoint& p, double t_op) {
  const long double ax0 = std::abs((long double)s.x0);
  const long double xt = p.x_tilde;
  const long double vt = p.v_tilde;
  const long double v0 = s.v0;
  const long double sigma = s.sigma;
  const long double h = (long double)s.hbar / ((long double)s.mass * sigma * sigma);
  const long double inv_h2 = 1.0L / (h * h);
  const long double two_sig2 = 2.0L * sigma * sigma;
  const long double m_over_2h = (long double)s.mass / (2.0L * (long double)s.hbar);
  const long double T = t_op;
  const long double dt1 = T - (long double)s.t;

  const long double d0 = 1.0L / (1.0L + sql(h * T));
  const long double d1 = 1.0L / (1.0L + sql(h * dt1));

  GammaParts g;
  g.re0 = (d0 / two_sig2) * (2.0L * T * ax0 * v0 - sql(ax0) + inv_h2 * sql(v0));
  g.im0 = m_over_2h * d0 * (2.0L * ax0 * v0 - T * (sql(v0) - sql(h * ax0)));
  g.re1 = -(d1 / two_sig2) * (2.0L * dt1 * xt * vt + sql(xt) - inv_h2 * sql(vt));
  g.im1 = m_over_2h * d1 * (2.0L * xt * vt + dt1 * (sql(vt) - sql(h * xt)));
  return g;
}

long double omega_log_ld(const PhysicalScenario& s, const PhaseSpacePoint& p) {
  const long double a0 = sql((long double)s.mass * s.sigma * s.v0 / s.hbar);
  const long double at = sql((long double)s.mass * s.sigma * p.v_tilde / s.hbar);
  return -0.5L * (a0 + at);
}

}  // namespace

SlitGamma gamma_components(const PhysicalScenario& s, const PhaseSpacePoint& p, double t_op) {
  validate_scenario(s);
  validate_point(p);
  if (!std::isfinite(t_op)) throw input_error("gamma_components: t_op must be finite");

  const GammaParts parts = gamma_parts_ld(s, p, t_op);
  SlitGamma g;
  g.re_gamma0 = static_cast<double>(parts.re0);
  g.im_gamma0 = static_cast<double>(parts.im0);
  g.re_gamma1 = static_cast<double>(parts.re1);
  g.im_gamma1 = static_cast<double>(parts.im1);

  // Tripwire: the rationalized forms must agree with the direct divisions.
  const FrozenConstants fc = frozen_constants(s, p);
  const std::complex<double> g0_direct = fc.T0 / (t_op - fc.tau0);
  const std::complex<double> g1_direct = fc.T1 / (t_op - fc.tau1);
  const double scale = std::max({std::abs(g0_direct), std::abs(g1_direct), 1.0});
  const double dev = std::max(
      std::abs(std::complex<double>(g.re_gamma0, g.im_gamma0) - g0_direct),
      std::abs(std::complex<double>(g.re_gamma1, g.im_gamma1) - g1_direct));
  if (dev > 1e-12 * scale)
    throw numeric_error("gamma_components: closed forms deviate from the direct divisions by " +
                        std::to_string(dev / scale) + " relative");
  return g;
}

ScaledComplex f_1slit(const PhysicalScenario& s, const PhaseSpacePoint& p, double nu,
                      double t_op) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw input_error("f_1slit: nu must be positive");
  const SlitGamma check = gamma_components(s, p, t_op);  // runs the tripwire
  (void)check;
  const GammaParts parts = gamma_parts_ld(s, p, t_op);
  const std::complex<double> exponent(
      static_cast<double>(parts.re0 + parts.re1 + omega_log_ld(s, p)),
      static_cast<double>(parts.im0 + parts.im1));
  const FrozenConstants fc = frozen_constants(s, p);
  return ScaledComplex::exp_of(exponent) * (fc.omega_prefactor * (std::numbers::pi / nu));
}

double husimi_1slit(const PhysicalScenario& s, const PhaseSpacePoint& p, double nu, double t_op) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw input_error("husimi_1slit: nu must be positive");
  const SlitGamma check = gamma_components(s, p, t_op);
  (void)check;
  const GammaParts parts = gamma_parts_ld(s, p, t_op);
  const double exponent =
      static_cast<double>(2.0L * (parts.re0 + parts.re1 + omega_log_ld(s, p)));
  const FrozenConstants fc = frozen_constants(s, p);
  const double mod_gamma = std::abs(fc.omega_prefactor);
  return sq(std::numbers::pi / nu) * sq(mod_gamma) * std::exp(exponent);
}

double husimi_1slit_symmetric(const PhysicalScenario& s, const PhaseSpacePoint& p, double nu) {
  validate_scenario(s);
  validate_point(p);
  if (!(nu > 0.0) || !std::isfinite(nu))
    throw input_error("husimi_1slit_symmetric: nu must be positive");
  const double t_c = s.t_c();
  if (std::abs(s.t - 2.0 * t_c) > 1e-9 * t_c)
    throw input_error(
        "husimi_1slit_symmetric: requires t = 2 t_c; use husimi_1slit for general times");

  const double h = s.hbar / (s.mass * s.sigma * s.sigma);
  const double st = sigma_tau(s, t_c);
  const double ax0 = std::abs(s.x0);
  const double pref = std::numbers::pi / (4.0 * s.sigma * s.sigma * nu * nu);
  const double alg = sq(p.v_tilde + s.v0) + sq(h) * sq(p.x_tilde + ax0);
  const double env = std::exp(-sq(p.x_tilde - p.v_tilde * t_c) / sq(st));
  return pref * alg * env;
}

ScaledComplex f_multislit(const PhysicalScenario& s, const PhaseSpacePoint& p,
                          const TimeGrating& grating) {
  validate_grating(grating);
  if (grating.slits.front().n != 2)
    throw input_error("f_multislit: narrow-slit closed forms are defined for n = 2 gratings");
  const double w = grating.weight();
  ScaledComplex acc = ScaledComplex::zero();
  for (const ApodizationBarrier& slit : grating.slits)
    acc = acc + f_1slit(s, p, slit.nu, slit.t_op) * std::complex<double>(w, 0.0);
  return acc;
}

namespace {

TwoSlitStructured assemble_two_slit(const PhysicalScenario& s, const PhaseSpacePoint& p,
                                    double nu, long double g2, long double f1, long double f2) {
  TwoSlitStructured out;
  const double h = s.hbar / (s.mass * s.sigma * s.sigma);
  out.g1 = sq(p.v_tilde + s.v0) + sq(h) * sq(p.x_tilde + std::abs(s.x0));
  out.g2 = static_cast<double>(g2);
  out.f1 = static_cast<double>(f1);
  out.f2 = static_cast<double>(f2);
  const double pref = std::numbers::pi / (8.0 * s.sigma * s.sigma * nu * nu);
  // cosh folded into the exponentials so large |f1| cannot overflow alone.
  const double combined = 0.5 * std::exp(out.g2 + out.f1) + 0.5 * std::exp(out.g2 - out.f1) +
                          std::exp(out.g2) * std::cos(out.f2);
  out.value = std::max(0.0, pref * out.g1 * combined);
  return out;
}

}  // namespace

TwoSlitStructured husimi_2slit_structured(const PhysicalScenario& s, const PhaseSpacePoint& p,
                                          double nu, double t_op0, double t_op1) {
  if (!(nu > 0.0) || !std::isfinite(nu))
    throw input_error("husimi_2slit_structured: nu must be positive");
  const SlitGamma check0 = gamma_components(s, p, t_op0);
  const SlitGamma check1 = gamma_components(s, p, t_op1);
  (void)check0;
  (void)check1;
  const GammaParts ga = gamma_parts_ld(s, p, t_op0);
  const GammaParts gb = gamma_parts_ld(s, p, t_op1);
  // 2 * omega_log = -(m sigma / hbar)^2 (v0^2 + v~^2), which closes g2.
  const long double g2 =
      (ga.re0 + ga.re1) + (gb.re0 + gb.re1) + 2.0L * omega_log_ld(s, p);
  const long double f1 = (ga.re0 + ga.re1) - (gb.re0 + gb.re1);
  const long double f2 = (ga.im0 + ga.im1) - (gb.im0 + gb.im1);
  return assemble_two_slit(s, p, nu, g2, f1, f2);
}

TwoSlitStructured husimi_2slit_symmetric(const PhysicalScenario& s, const PhaseSpacePoint& p,
                                         double nu, double t_op0, double t_op1) {
  validate_scenario(s);
  validate_point(p);
  if (!(nu > 0.0) || !std::isfinite(nu))
    throw input_error("husimi_2slit_symmetric: nu must be positive");
  const double t_c = s.t_c();
  if (std::abs(s.t - 2.0 * t_c) > 1e-9 * t_c ||
      std::abs(t_op0 + t_op1 - 2.0 * t_c) > 1e-9 * t_c)
    throw input_error(
        "husimi_2slit_symmetric: requires t = 2 t_c and slits symmetric about t_c; "
        "use husimi_2slit_structured for general configurations");

  const long double sigma = s.sigma;
  const long double h = (long double)s.hbar / ((long double)s.mass * sigma * sigma);
  const long double h2 = h * h;
  const long double inv_h2 = 1.0L / h2;
  const long double ax0 = std::abs((long double)s.x0);
  const long double xt = p.x_tilde;
  const long double vt = p.v_tilde;
  const long double v0 = s.v0;
  const long double xv0 = ax0 * v0;
  const long double xvt = xt * vt;
  const long double T0 = t_op0;
  const long double T1 = t_op1;
  const long double d0 = 1.0L / (1.0L + h2 * sql(T0));
  const long double d1 = 1.0L / (1.0L + h2 * sql(T1));
  const long double dsum = T0 + T1;
  const long double dprod = T0 * T1;
  const long double dsq = sql(T0) + sql(T1);
  const long double delta_t = T1 - T0;
  const long double two_sig2 = 2.0L * sigma * sigma;

  const long double g2 =
      (d0 * d1 / two_sig2) *
          (2.0L * dsum * (1.0L + h2 * dprod) * (xv0 + xvt) +
           (2.0L + h2 * dsq) * (inv_h2 * (sql(vt) + sql(v0)) - (sql(xt) + sql(ax0)))) -
      inv_h2 * (sql(vt) + sql(v0)) / sql(sigma);
  const long double f1 = (d0 * d1 / two_sig2) * delta_t *
                         (2.0L * (-1.0L + h2 * dprod) * (xv0 - xvt) +
                          dsum * (sql(v0) - sql(vt) + h2 * (sql(xt) - sql(ax0))));
  const long double f2 = ((long double)s.mass / (2.0L * (long double)s.hbar)) * d0 * d1 *
                         delta_t *
                         (2.0L * h2 * dsum * (xv0 - xvt) +
                          (-1.0L + h2 * dprod) * (sql(vt) - sql(v0) + h2 * (sql(ax0) - sql(xt))));
  return assemble_two_slit(s, p, nu, g2, f1, f2);
}

FringeLine fringe_line(const PhysicalScenario& s, double t_op0, double t_op1) {
  validate_scenario(s);
  if (!(t_op1 > t_op0))
    throw input_error("fringe_line: t_op1 must exceed t_op0");
  const double t_c = s.t_c();
  if (std::abs(t_op0 + t_op1 - 2.0 * t_c) > 1e-9 * t_c)
    throw input_error(
        "fringe_line: slits must be symmetric about t_c within 1e-9 relative; "
        "asymmetric gratings require numeric peak finding (find_peaks_on_line)");

  const double h = s.hbar / (s.mass * s.sigma * s.sigma);
  const double h2 = h * h;
  const double dsum = t_op0 + t_op1;
  const double mid = (2.0 / dsum) * (1.0 - h2 * t_op0 * t_op1);
  const double disc = (4.0 / sq(dsum)) *
                      (1.0 + h2 * (sq(t_op0) + sq(t_op1)) + sq(h2 * t_op0 * t_op1));

  FringeLine out;
  out.alpha = 1.0 / t_c;
  out.beta = 0.0;
  out.alpha_exact = 0.5 * (mid + std::sqrt(disc));
  out.epsilon = (t_op1 - t_op0) / (2.0 * t_c);
  out.epsilon_large = out.epsilon > 0.3;
  return out;
}

FringeSet fringe_positions(const PhysicalScenario& s, double t_op0, double t_op1, int k_min,
                           int k_max) {
  validate_scenario(s);
  if (k_min > k_max) throw input_error("fringe_positions: empty index range");
  if (!(t_op1 > t_op0)) throw input_error("fringe_positions: t_op1 must exceed t_op0");

  const double ax0 = std::abs(s.x0);
  const double delta_t = t_op1 - t_op0;
  const double step = 2.0 * s.hbar * std::numbers::pi / (s.mass * sq(s.v0) * delta_t);

  FringeSet out;
  out.k_min = k_min;
  out.k_max = k_max;
  for (int k = k_min; k <= k_max; ++k) {
    const double radicand = 1.0 + step * static_cast<double>(k);
    if (!(radicand > 0.0)) {
      out.omitted.push_back(k);
      continue;
    }
    FringePoint pt;
    pt.k = k;
    pt.x_tilde = ax0 * std::sqrt(radicand);
    pt.v_tilde = s.v0 * pt.x_tilde / ax0;
    pt.bright = (k % 2 == 0);
    out.points.push_back(pt);
  }
  return out;
}

namespace {

// Golden-section refinement of a bracketed extremum; sgn = +1 seeks a
// maximum, -1 a minimum.
double golden_refine(const std::function<double(double)>& f, double a, double b, double sgn,
                     double rel_tol) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = sgn * f(x1);
  double f2 = sgn * f(x2);
  while (b - a > rel_tol * std::max(std::abs(a), std::abs(b))) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = sgn * f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = sgn * f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<LineExtremum> find_peaks_on_line(
    const PhysicalScenario& s, double x_lo, double x_hi, int samples,
    const std::function<double(const PhaseSpacePoint&)>& evaluate) {
  validate_scenario(s);
  if (!(x_lo > 0.0) || !(x_hi > x_lo))
    throw input_error("find_peaks_on_line: require 0 < x_lo < x_hi");
  if (samples < 100) throw input_error("find_peaks_on_line: samples must be >= 100");

  const double slope = s.v0 / std::abs(s.x0);
  auto f_line = [&](double x) {
    PhaseSpacePoint p;
    p.x_tilde = x;
    p.v_tilde = slope * x;
    return evaluate(p);
  };

  std::vector<double> xs(static_cast<size_t>(samples));
  std::vector<double> fs(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    xs[static_cast<size_t>(i)] = x_lo + (x_hi - x_lo) * i / (samples - 1.0);
    fs[static_cast<size_t>(i)] = f_line(xs[static_cast<size_t>(i)]);
  }

  std::vector<LineExtremum> out;
  for (int i = 1; i + 1 < samples; ++i) {
    const double fm = fs[static_cast<size_t>(i - 1)];
    const double fc = fs[static_cast<size_t>(i)];
    const double fp = fs[static_cast<size_t>(i + 1)];
    const bool is_max = fc > fm && fc > fp;
    const bool is_min = fc < fm && fc < fp;
    if (!is_max && !is_min) continue;
    const double x = golden_refine(f_line, xs[static_cast<size_t>(i - 1)],
                                   xs[static_cast<size_t>(i + 1)], is_max ? 1.0 : -1.0, 1e-6);
    LineExtremum e;
    e.x_tilde = x;
    e.v_tilde = slope * x;
    e.is_max = is_max;
    out.push_back(e);
  }
  return out;
}

}  // namespace husimi
