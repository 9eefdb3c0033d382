#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "husimi/aperture.hpp"
#include "husimi/gaussian.hpp"
#include "husimi/scaled_complex.hpp"
#include "husimi/scenario.hpp"

namespace husimi {

// Pole bookkeeping for one barrier under the Moebius map that sends the
// integration variable to the frame of the two Gaussian saddle times.
// Index order follows the aperture pole phases (2j+1)pi/n, j = 0..n-1, so
// the first n/2 entries are the upper-half-plane poles.
struct PoleData {
  std::vector<std::complex<double>> Zj;  // barrier poles, seconds
  std::vector<std::complex<double>> zj;  // mapped poles, dimensionless
  std::vector<std::complex<double>> Aj;  // partial-fraction coefficients
  // Z^2 / (1 + nu^n (tau0 - t_op)^n), the constant factor of the mapped
  // rational aperture.
  std::complex<double> prefactor_const{0.0, 0.0};
};

struct ResidueDiagnostics {
  int bessel_terms_used = 0;
  // |last series term| / |accumulated sum|; <= the truncation tolerance
  // whenever the series converged.
  double last_term_magnitude = 0.0;
  // Rigorous bound on the dropped tail contributions (error_bound_tails).
  double i_tail_bound = 0.0;
  std::complex<double> bessel_argument{0.0, 0.0};
};

// Maps the barrier poles, forms the partial-fraction coefficients
//   Aj = (zj + Z)^{n-2} / prod_{j' != j} (zj - zj'),
// and verifies them against a linear system solved at sample points on a
// circle enclosing all mapped poles; disagreement beyond 1e-8 relative or a
// pole collision within 1e-12 relative is an error.
PoleData mapped_poles(const FrozenConstants& fc, const ApodizationBarrier& a);

// Residue at the mapped essential singularity z = 0:
//   -prefactor_const * sum_j Aj sum_{k>=1} (-1)^k zj^{-k} J_k(b),
// b = 2 sqrt(T0 T1) / (tau1 - tau0) with the branch-consistent root.
// The series stops once three consecutive terms fall below tol * |sum|.
std::pair<std::complex<double>, ResidueDiagnostics> essential_residue(
    const FrozenConstants& fc, const PoleData& pd, double tol);

// Residues at the mapped simple poles zj:
//   prefactor_const * Aj * exp((b/2)(zj - 1/zj)).
std::vector<std::complex<double>> pole_residues_mapped(const FrozenConstants& fc,
                                                       const PoleData& pd);

// Residues of the frozen integrand at the barrier poles Zj (all n, in index
// order; downstream assembly uses only the upper-half entries):
//   (Omega / nu^n) * prod_{j' != j} (Zj - Zj')^{-1} * exp(T0/(Zj-tau0) + T1/(Zj-tau1)).
std::vector<ScaledComplex> pole_residues_chi(const FrozenConstants& fc,
                                             const ApodizationBarrier& a);

// Residue of the frozen integrand at tau0:
//   (Omega (tau1 - tau0) / Z) e^{(T0-T1)/(tau1-tau0)} {essential + sum mapped}.
// The braced combination is summed as one series over the moments
// sum_j Aj zj^k, which is cancellation-free even when the mapped poles
// cluster and the individual parts carry coefficients of order 1e11; adding
// essential_residue and pole_residues_mapped values directly loses
// ~log10(max |Aj|) digits there.
std::pair<ScaledComplex, ResidueDiagnostics> residue_at_tau0(const FrozenConstants& fc,
                                                             const ApodizationBarrier& a,
                                                             double tol);

// Closed-contour value of the frozen amplitude,
//   2 pi i { residue_at_tau0 + sum over upper-half barrier poles },
// which equals the frozen amplitude up to tail contributions that are never
// computed, only bounded; the bound rides along in the diagnostics.
std::pair<ScaledComplex, ResidueDiagnostics> f_froz_analytic(const FrozenConstants& fc,
                                                             const PhysicalScenario& s,
                                                             const PhaseSpacePoint& p,
                                                             const ApodizationBarrier& a,
                                                             double tol);
std::pair<ScaledComplex, ResidueDiagnostics> f_froz_analytic(const FrozenConstants& fc,
                                                             const PhysicalScenario& s,
                                                             const PhaseSpacePoint& p,
                                                             const TimeGrating& grating,
                                                             double tol);

// Upper bound on the modulus of the two dropped tail integrals:
//   Gamma_up * N_{x~,-v~}[max(t, t~)] * max(e^{-(sigma/lam)^2/2}, e^{-(x0/sigma)^2/2}) * int_{-inf}^0 |chi|
// + Gamma_up * N_{x0,v0}(t)          * max(e^{-(x~/sigma)^2/2}, e^{-(sigma/lam~)^2/2}) * int_t^{inf} |chi|,
// assembled in log space so extreme Gaussian factors underflow to 0 rather
// than polluting the sum.
double error_bound_tails(const FrozenConstants& fc, const PhysicalScenario& s,
                         const PhaseSpacePoint& p, const ApodizationBarrier& a, double t);
double error_bound_tails(const FrozenConstants& fc, const PhysicalScenario& s,
                         const PhaseSpacePoint& p, const TimeGrating& grating, double t);

}  // namespace husimi
