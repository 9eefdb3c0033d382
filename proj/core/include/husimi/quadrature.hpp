#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "husimi/aperture.hpp"
#include "husimi/gaussian.hpp"
#include "husimi/scenario.hpp"

namespace husimi {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  // 0 means "auto": the drivers substitute 1e-14 times their integrand scale.
  double abs_tol = 0.0;
  int max_subdivisions = 2000;
  // Abscissae where the integrand varies sharply (slit openings); the initial
  // partition is split there so no narrow feature straddles a panel interior.
  std::vector<double> forced_breakpoints;
};

struct QuadratureResult {
  std::complex<double> value{0.0, 0.0};
  double error_estimate = 0.0;
  int subdivisions_used = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod 7-15 integration of a complex integrand over [a, b].
// Real and imaginary parts share the subdivision tree; the panel error is the
// modulus of the Kronrod-Gauss difference, so the Euclidean norm over both
// components drives refinement.  Exhausting the subdivision budget is not an
// error: the result is returned with converged = false and the accumulated
// error estimate, and the caller decides whether that is acceptable.
QuadratureResult integrate_gk15(const std::function<std::complex<double>(double)>& fn,
                                double a, double b, const QuadratureConfig& cfg);

// Full time integral of the transmitted amplitude: the aperture-weighted
// product of the incident packet evaluated at the barrier and the reversed
// packet propagated from the detection point, with the exact time-dependent
// width factors.  Breakpoints at every opening time t_op and t_op +- 1/nu
// are always added.
QuadratureResult husimi_amplitude_exact(const PhysicalScenario& s, const PhaseSpacePoint& p,
                                        const TimeGrating& grating, const QuadratureConfig& cfg);
QuadratureResult husimi_amplitude_exact(const PhysicalScenario& s, const PhaseSpacePoint& p,
                                        const ApodizationBarrier& barrier,
                                        const QuadratureConfig& cfg);

// Frozen-width approximation of the same amplitude: Omega * chi(tau) * e^phi.
QuadratureResult f_froz_quadrature(const PhysicalScenario& s, const PhaseSpacePoint& p,
                                   const TimeGrating& grating, const QuadratureConfig& cfg);
QuadratureResult f_froz_quadrature(const PhysicalScenario& s, const PhaseSpacePoint& p,
                                   const ApodizationBarrier& barrier,
                                   const QuadratureConfig& cfg);

// (1 / 2 pi i) times the contour integral of fn over the circle of the given
// center and radius, by the trapezoidal rule, which converges geometrically
// for integrands analytic in an annulus around the circle.  For fn analytic
// inside except isolated singularities this is the sum of enclosed residues.
std::complex<double> contour_circle_integral(
    const std::function<std::complex<double>(std::complex<double>)>& fn,
    std::complex<double> center, double radius, int samples = 512);

}  // namespace husimi
