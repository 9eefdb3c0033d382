#include "husimi/residue.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "husimi/cbessel.hpp"
#include "husimi/errors.hpp"

namespace husimi {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kBesselArgCap = 1e3;
constexpr int kBesselKMax = 500;

std::complex<double> bessel_argument(const FrozenConstants& fc) {
  return 2.0 * fc.sqrt_T0T1() / (fc.tau1 - fc.tau0);
}

// Aj from the closed formula, then re-derived by solving the interpolation
// system  sum_j Aj prod_{j'!=j}(z_s - zj') = (z_s + Z)^{n-2}  at n sample
// points on a circle strictly enclosing all mapped poles.  The formula was
// only proven for n up to 10, so each use re-checks it numerically.
void compute_and_verify_aj(const FrozenConstants& fc, PoleData& pd) {
  const int n = static_cast<int>(pd.zj.size());
  pd.Aj.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::complex<double> denom{1.0, 0.0};
    for (int jp = 0; jp < n; ++jp) {
      if (jp != j) denom *= pd.zj[static_cast<size_t>(j)] - pd.zj[static_cast<size_t>(jp)];
    }
    pd.Aj[static_cast<size_t>(j)] =
        cpow_int(pd.zj[static_cast<size_t>(j)] + fc.Z, n - 2) / denom;
  }

  // One sample point near each pole keeps the system nearly diagonal even
  // when the poles cluster; a single enclosing circle degrades like
  // (radius / spread)^(n-1) and loses the 1e-8 margin already at n = 6.
  Eigen::MatrixXcd mat(n, n);
  Eigen::VectorXcd rhs(n);
  for (int s = 0; s < n; ++s) {
    double nearest = std::numeric_limits<double>::infinity();
    for (int jp = 0; jp < n; ++jp) {
      if (jp != s)
        nearest = std::min(nearest, std::abs(pd.zj[static_cast<size_t>(s)] -
                                             pd.zj[static_cast<size_t>(jp)]));
    }
    const std::complex<double> zs =
        pd.zj[static_cast<size_t>(s)] +
        std::polar(0.5 * nearest, 2.0 * std::numbers::pi * (s + 0.25) / n);
    for (int j = 0; j < n; ++j) {
      std::complex<double> prod{1.0, 0.0};
      for (int jp = 0; jp < n; ++jp) {
        if (jp != j) prod *= zs - pd.zj[static_cast<size_t>(jp)];
      }
      mat(s, j) = prod;
    }
    rhs(s) = cpow_int(zs + fc.Z, n - 2);
  }
  const Eigen::VectorXcd solved = mat.colPivHouseholderQr().solve(rhs);

  double max_a = 0.0;
  double max_diff = 0.0;
  for (int j = 0; j < n; ++j) {
    max_a = std::max(max_a, std::abs(pd.Aj[static_cast<size_t>(j)]));
    max_diff = std::max(max_diff, std::abs(solved(j) - pd.Aj[static_cast<size_t>(j)]));
  }
  if (max_a == 0.0 || max_diff > 1e-8 * max_a) {
    char dev[32];
    std::snprintf(dev, sizeof(dev), "%.3e", max_diff / (max_a > 0.0 ? max_a : 1.0));
    throw numeric_error(
        "mapped_poles: partial-fraction coefficients disagree with the "
        "linear-system solution (relative deviation " + std::string(dev) + ")");
  }
}

std::pair<ScaledComplex, ResidueDiagnostics> essential_residue_scaled(const FrozenConstants& fc,
                                                                      const PoleData& pd,
                                                                      double tol) {
  if (!(tol > 0.0)) throw input_error("essential_residue: tol must be positive");
  const std::complex<double> b = bessel_argument(fc);
  ResidueDiagnostics diag;
  diag.bessel_argument = b;
  if (std::abs(b) > kBesselArgCap)
    throw numeric_error(
        "essential_residue: Bessel argument magnitude " + std::to_string(std::abs(b)) +
        " exceeds the evaluation cap " + std::to_string(kBesselArgCap) +
        "; this regime belongs to the narrow-slit closed forms");

  const int n = static_cast<int>(pd.zj.size());
  std::vector<ScaledComplex> inv_pow(static_cast<size_t>(n));  // zj^{-k}, updated per k
  std::vector<std::complex<double>> inv(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const std::complex<double> z = pd.zj[static_cast<size_t>(j)];
    if (std::abs(z) < 1e-300)
      throw numeric_error("essential_residue: mapped pole collides with the essential singularity");
    inv[static_cast<size_t>(j)] = 1.0 / z;
    inv_pow[static_cast<size_t>(j)] = ScaledComplex::from({1.0, 0.0});
  }

  int seq_len = std::min(kBesselKMax, static_cast<int>(std::ceil(std::abs(b))) + 60);
  std::vector<std::complex<double>> jk = bessel_j_sequence(seq_len, b, kBesselArgCap);

  ScaledComplex sum = ScaledComplex::zero();
  int small_in_a_row = 0;
  double sign = -1.0;  // (-1)^k starting at k = 1
  int k = 0;
  while (true) {
    ++k;
    if (k > kBesselKMax)
      throw numeric_error("essential_residue: series not converged within " +
                          std::to_string(kBesselKMax) + " terms");
    if (k > seq_len) {
      seq_len = std::min(kBesselKMax, 2 * seq_len);
      jk = bessel_j_sequence(seq_len, b, kBesselArgCap);
    }
    ScaledComplex inner = ScaledComplex::zero();
    for (int j = 0; j < n; ++j) {
      inv_pow[static_cast<size_t>(j)] =
          inv_pow[static_cast<size_t>(j)] * inv[static_cast<size_t>(j)];
      inner = inner + inv_pow[static_cast<size_t>(j)] * pd.Aj[static_cast<size_t>(j)];
    }
    const ScaledComplex term =
        inner * (sign * jk[static_cast<size_t>(k)]);
    sign = -sign;
    sum = sum + term;
    diag.bessel_terms_used = k;
    const double sum_abs = sum.abs();
    const double term_abs = term.abs();
    diag.last_term_magnitude = (sum_abs > 0.0) ? term_abs / sum_abs : term_abs;
    const bool small = (sum_abs > 0.0) ? (term_abs <= tol * sum_abs) : (term_abs == 0.0);
    if (small) {
      if (++small_in_a_row >= 3) break;
    } else {
      small_in_a_row = 0;
    }
  }

  const ScaledComplex value = sum * (-pd.prefactor_const);
  return {value, diag};
}

std::vector<ScaledComplex> pole_residues_mapped_scaled(const FrozenConstants& fc,
                                                       const PoleData& pd) {
  const std::complex<double> half_b = fc.sqrt_T0T1() / (fc.tau1 - fc.tau0);
  std::vector<ScaledComplex> out;
  out.reserve(pd.zj.size());
  for (size_t j = 0; j < pd.zj.size(); ++j) {
    const std::complex<double> z = pd.zj[j];
    const ScaledComplex e = ScaledComplex::exp_of(half_b * (z - 1.0 / z));
    out.push_back(e * (pd.prefactor_const * pd.Aj[j]));
  }
  return out;
}

// Combined essential + mapped-pole sum, evaluated without forming either
// part.  By the generating identity e^{(b/2)(z - 1/z)} = sum_k J_k(b) z^k,
//   sum_j Aj e^{(b/2)(zj - 1/zj)} - sum_j Aj sum_{k>=1} (-1)^k zj^{-k} J_k(b)
//     = sum_{k>=1} J_k(b) m_k,          m_k = sum_j Aj zj^k,
// (the J_0 term drops since m_0 = 0), and the moments m_k follow exact
// symmetric-function recurrences that never touch the partial-fraction
// coefficients.  Summing the two parts separately instead loses
// ~log10(max |Aj|) digits to cancellation once the mapped poles cluster,
// which is exactly the sharp-barrier regime this representation is for.
std::pair<ScaledComplex, ResidueDiagnostics> residue_inner_series(const FrozenConstants& fc,
                                                                  const PoleData& pd,
                                                                  double tol) {
  if (!(tol > 0.0)) throw input_error("residue_at_tau0: tol must be positive");
  const std::complex<double> b = bessel_argument(fc);
  ResidueDiagnostics diag;
  diag.bessel_argument = b;
  if (std::abs(b) > kBesselArgCap)
    throw numeric_error(
        "residue_at_tau0: Bessel argument magnitude " + std::to_string(std::abs(b)) +
        " exceeds the evaluation cap " + std::to_string(kBesselArgCap) +
        "; this regime belongs to the narrow-slit closed forms");

  const int n = static_cast<int>(pd.zj.size());

  // Monic polynomial with the mapped poles as roots: prod (x - zj) has
  // coefficients c[0..n], c[0] = 1.  The complete homogeneous symmetric
  // polynomials h_k then satisfy  h_k = -sum_{i=1}^{min(k,n)} c[i] h_{k-i},
  // and the moments are  m_k = sum_{q=0}^{min(n-2,k-1)} C(n-2,q) Z^q h_{k-1-q}.
  std::vector<std::complex<double>> c(static_cast<size_t>(n) + 1, {0.0, 0.0});
  c[0] = {1.0, 0.0};
  for (int r = 0; r < n; ++r) {
    for (int i = r + 1; i >= 1; --i)
      c[static_cast<size_t>(i)] -= pd.zj[static_cast<size_t>(r)] * c[static_cast<size_t>(i) - 1];
  }
  std::vector<std::complex<double>> bz(static_cast<size_t>(n) - 1);
  bz[0] = {1.0, 0.0};
  for (int q = 1; q <= n - 2; ++q)
    bz[static_cast<size_t>(q)] = bz[static_cast<size_t>(q) - 1] * fc.Z * ((n - 1.0 - q) / q);

  int seq_len = std::min(kBesselKMax, static_cast<int>(std::ceil(std::abs(b))) + 60);
  std::vector<std::complex<double>> jk = bessel_j_sequence(seq_len, b, kBesselArgCap);

  std::vector<ScaledComplex> h;
  h.reserve(static_cast<size_t>(kBesselKMax) + 1);
  h.push_back(ScaledComplex::from({1.0, 0.0}));

  ScaledComplex sum = ScaledComplex::zero();
  int small_in_a_row = 0;
  int k = 0;
  while (true) {
    ++k;
    if (k > kBesselKMax)
      throw numeric_error("residue_at_tau0: series not converged within " +
                          std::to_string(kBesselKMax) + " terms");
    if (k > seq_len) {
      seq_len = std::min(kBesselKMax, 2 * seq_len);
      jk = bessel_j_sequence(seq_len, b, kBesselArgCap);
    }
    ScaledComplex mk = ScaledComplex::zero();
    const int qmax = std::min(n - 2, k - 1);
    for (int q = 0; q <= qmax; ++q)
      mk = mk + h[static_cast<size_t>(k - 1 - q)] * bz[static_cast<size_t>(q)];
    const ScaledComplex term = mk * jk[static_cast<size_t>(k)];
    sum = sum + term;
    diag.bessel_terms_used = k;
    const double sum_abs = sum.abs();
    const double term_abs = term.abs();
    diag.last_term_magnitude = (sum_abs > 0.0) ? term_abs / sum_abs : term_abs;
    const bool small = (sum_abs > 0.0) ? (term_abs <= tol * sum_abs) : (term_abs == 0.0);
    if (small) {
      if (++small_in_a_row >= 3) break;
    } else {
      small_in_a_row = 0;
    }
    ScaledComplex hk = ScaledComplex::zero();
    for (int i = 1; i <= std::min(k, n); ++i)
      hk = hk + h[static_cast<size_t>(k - i)] * (-c[static_cast<size_t>(i)]);
    h.push_back(hk);
  }

  return {sum * pd.prefactor_const, diag};
}

std::pair<ScaledComplex, ResidueDiagnostics> residue_at_tau0_impl(const FrozenConstants& fc,
                                                                  const ApodizationBarrier& a,
                                                                  double tol) {
  const PoleData pd = mapped_poles(fc, a);
  auto [inner, diag] = residue_inner_series(fc, pd, tol);

  const std::complex<double> dtau = fc.tau1 - fc.tau0;
  const ScaledComplex prefactor =
      ScaledComplex::exp_of((fc.T0 - fc.T1) / dtau + fc.omega_log) *
      (fc.omega_prefactor * dtau / fc.Z);
  return {prefactor * inner, diag};
}

}  // namespace

PoleData mapped_poles(const FrozenConstants& fc, const ApodizationBarrier& a) {
  validate_barrier(a);
  PoleData pd;
  pd.Zj = chi_poles_all(a);
  const int n = a.n;
  pd.zj.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const std::complex<double> Zj = pd.Zj[static_cast<size_t>(j)];
    const std::complex<double> d = fc.tau0 - Zj;
    if (std::abs(d) == 0.0)
      throw numeric_error("mapped_poles: barrier pole coincides with tau0");
    pd.zj[static_cast<size_t>(j)] = -fc.Z * (fc.tau1 - Zj) / d;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double sep =
          std::abs(pd.zj[static_cast<size_t>(i)] - pd.zj[static_cast<size_t>(j)]);
      const double scale = std::max(std::abs(pd.zj[static_cast<size_t>(i)]),
                                    std::abs(pd.zj[static_cast<size_t>(j)]));
      if (sep < 1e-12 * scale)
        throw numeric_error(
            "mapped_poles: mapped poles degenerate (collision within 1e-12 relative); "
            "parameters sit too close to a branch-degenerate configuration");
    }
  }
  pd.prefactor_const = fc.Z * fc.Z * chi_eval(a, std::complex<double>(fc.tau0));
  compute_and_verify_aj(fc, pd);
  return pd;
}

std::pair<std::complex<double>, ResidueDiagnostics> essential_residue(const FrozenConstants& fc,
                                                                      const PoleData& pd,
                                                                      double tol) {
  auto [value, diag] = essential_residue_scaled(fc, pd, tol);
  return {value.to_complex(), diag};
}

std::vector<std::complex<double>> pole_residues_mapped(const FrozenConstants& fc,
                                                       const PoleData& pd) {
  std::vector<std::complex<double>> out;
  out.reserve(pd.zj.size());
  for (const ScaledComplex& r : pole_residues_mapped_scaled(fc, pd)) out.push_back(r.to_complex());
  return out;
}

std::vector<ScaledComplex> pole_residues_chi(const FrozenConstants& fc,
                                             const ApodizationBarrier& a) {
  validate_barrier(a);
  const int n = a.n;
  // Zj - Zj' = (1/nu)(e_j - e_j') with unit poles e_j = e^{i(2j+1)pi/n}, so
  // (1/nu^n) prod^{-1} reduces to (1/nu) / prod of unit-pole differences and
  // never overflows for large nu or n.
  std::vector<std::complex<double>> unit(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    unit[static_cast<size_t>(j)] = std::polar(1.0, (2.0 * j + 1.0) * std::numbers::pi / n);

  std::vector<ScaledComplex> out;
  out.reserve(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::complex<double> prod{1.0, 0.0};
    for (int jp = 0; jp < n; ++jp) {
      if (jp != j) prod *= unit[static_cast<size_t>(j)] - unit[static_cast<size_t>(jp)];
    }
    const std::complex<double> Zj =
        a.t_op + unit[static_cast<size_t>(j)] / a.nu;
    const std::complex<double> expo =
        fc.T0 / (Zj - fc.tau0) + fc.T1 / (Zj - fc.tau1) + fc.omega_log;
    out.push_back(ScaledComplex::exp_of(expo) * (fc.omega_prefactor / (a.nu * prod)));
  }
  return out;
}

std::pair<ScaledComplex, ResidueDiagnostics> residue_at_tau0(const FrozenConstants& fc,
                                                             const ApodizationBarrier& a,
                                                             double tol) {
  return residue_at_tau0_impl(fc, a, tol);
}

std::pair<ScaledComplex, ResidueDiagnostics> f_froz_analytic(const FrozenConstants& fc,
                                                             const PhysicalScenario& s,
                                                             const PhaseSpacePoint& p,
                                                             const ApodizationBarrier& a,
                                                             double tol) {
  auto [res0, diag] = residue_at_tau0_impl(fc, a, tol);
  ScaledComplex inner = res0;
  const std::vector<ScaledComplex> chi_res = pole_residues_chi(fc, a);
  for (int j = 0; j < a.n / 2; ++j) inner = inner + chi_res[static_cast<size_t>(j)];
  const ScaledComplex value = inner * (2.0 * std::numbers::pi * kI);
  diag.i_tail_bound = error_bound_tails(fc, s, p, a, s.t);
  return {value, diag};
}

std::pair<ScaledComplex, ResidueDiagnostics> f_froz_analytic(const FrozenConstants& fc,
                                                             const PhysicalScenario& s,
                                                             const PhaseSpacePoint& p,
                                                             const TimeGrating& grating,
                                                             double tol) {
  validate_grating(grating);
  const double w = grating.weight();
  ScaledComplex total = ScaledComplex::zero();
  ResidueDiagnostics diag;
  for (const ApodizationBarrier& slit : grating.slits) {
    auto [res0, d] = residue_at_tau0_impl(fc, slit, tol);
    ScaledComplex inner = res0;
    const std::vector<ScaledComplex> chi_res = pole_residues_chi(fc, slit);
    for (int j = 0; j < slit.n / 2; ++j) inner = inner + chi_res[static_cast<size_t>(j)];
    total = total + inner * (2.0 * std::numbers::pi * kI * w);
    diag.bessel_terms_used = std::max(diag.bessel_terms_used, d.bessel_terms_used);
    diag.last_term_magnitude = std::max(diag.last_term_magnitude, d.last_term_magnitude);
    diag.bessel_argument = d.bessel_argument;  // shared across slits: depends only on fc
  }
  diag.i_tail_bound = error_bound_tails(fc, s, p, grating, s.t);
  return {total, diag};
}

double error_bound_tails(const FrozenConstants& fc, const PhysicalScenario& s,
                         const PhaseSpacePoint& p, const ApodizationBarrier& a, double t) {
  TimeGrating g;
  g.slits = {a};
  return error_bound_tails(fc, s, p, g, t);
}

double error_bound_tails(const FrozenConstants& fc, const PhysicalScenario& s,
                         const PhaseSpacePoint& p, const TimeGrating& grating, double t) {
  (void)fc;
  validate_scenario(s);
  validate_point(p);
  const TailIntegrals tails = tail_integrals(grating, t);

  const double lam = s.lambda_bar();
  const double lam_t = p.lambda_bar_tilde(s);
  const double sig2 = s.sigma * s.sigma;
  const double gamma_up =
      (1.0 / (2.0 * std::sqrt(std::numbers::pi) * s.sigma)) *
      (p.v_tilde * std::sqrt(1.0 + std::pow(lam_t * p.x_tilde / sig2, 2)) +
       s.v0 * std::sqrt(1.0 + std::pow(lam * std::abs(s.x0) / sig2, 2)));

  const double a0 = std::pow(s.sigma / lam, 2);
  const double at = std::pow(s.sigma / lam_t, 2);
  const double left_log = gaussian_envelope_log(s, p.x_tilde, -p.v_tilde, std::max(t, p.t_tilde())) +
                          std::max(-0.5 * a0, -0.5 * std::pow(s.x0 / s.sigma, 2)) +
                          std::log(tails.left);
  const double right_log = gaussian_envelope_log(s, s.x0, s.v0, t) +
                           std::max(-0.5 * std::pow(p.x_tilde / s.sigma, 2), -0.5 * at) +
                           std::log(tails.right);
  return gamma_up * (std::exp(left_log) + std::exp(right_log));
}

}  // namespace husimi
