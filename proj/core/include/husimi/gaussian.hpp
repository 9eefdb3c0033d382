#pragma once

#include <complex>

#include "husimi/scenario.hpp"

namespace husimi {

// Complex constants of the contour representation of the frozen-Gaussian
// Husimi amplitude for one (scenario, point) pair.
//
// tau0/tau1 are the complex times where the reciprocal packet widths
// 1/alpha_tau and 1/alpha_{t-tau} blow up; T0/T1 are the corresponding
// strengths of the two simple-pole exponents; Z^2 = T0/T1.
//
// The overall amplitude factor Omega is deliberately split: the polynomial
// part (omega_prefactor) stays a plain complex while the Gaussian factor
// exp(omega_log) would underflow on its own (omega_log ~ -1.5e4 for cold-atom
// parameters) and is only ever added to other exponents before exponentiation.
struct FrozenConstants {
    std::complex<double> tau0;             // s, Im > 0
    std::complex<double> tau1;             // s, Im < 0
    std::complex<double> T0;               // s
    std::complex<double> T1;               // s
    std::complex<double> Z;                // dimensionless, principal sqrt(T0/T1)
    std::complex<double> omega_prefactor;  // 1/(s*sqrt(m)) scale polynomial factor
    double omega_log = 0.0;                // -(sigma/lambdabar_tilde)^2/2 - (sigma/lambdabar)^2/2

    // The square root of T0*T1 consistent with the chosen branch of Z, i.e.
    // the root satisfying sqrt(T0 T1) * Z = T0. Everything downstream of Z
    // must use this root, never an independently taken principal sqrt(T0*T1),
    // or the two branch choices can disagree in sign.
    std::complex<double> sqrt_T0T1() const { return T0 / Z; }
};

// Minimum-uncertainty Gaussian at t = 0 with mean position center_x and mean
// velocity center_v, evaluated at x.
std::complex<double> psi_initial(const PhysicalScenario& s, double center_x,
                                 double center_v, double x);

// Free-particle propagator K0(xi, tau) = sqrt(m/(2*i*pi*hbar*tau)) *
// exp(i*m*xi^2/(2*hbar*tau)), principal branch. Requires tau > 0.
std::complex<double> free_propagator(const PhysicalScenario& s, double xi, double tau);

// Freely evolved Gaussian packet at position x and time tau >= 0 (closed form).
std::complex<double> psi_free(const PhysicalScenario& s, double center_x,
                              double center_v, double x, double tau);

// Width of the freely evolved packet at real time tau.
double sigma_tau(const PhysicalScenario& s, double tau);

// Complex packet-width parameter alpha_tau = (1/(2 sigma^2)) / (1 + i hbar tau / (m sigma^2)).
// Defined for complex tau away from the single pole at tau = i m sigma^2 / hbar.
std::complex<double> alpha_tau(const PhysicalScenario& s, std::complex<double> tau);

// All contour constants for scenario s evaluated at phase-space point p.
// Requires p in the positive quadrant.
FrozenConstants frozen_constants(const PhysicalScenario& s, const PhaseSpacePoint& p);

// Exponent of the frozen integrand: T0/(tau-tau0) + T1/(tau-tau1) + omega_log.
// The constant omega_log is folded in so that exp(phi) is O(1) on the real
// integration segment. Requires tau distinct from tau0 and tau1.
std::complex<double> phi(const FrozenConstants& fc, std::complex<double> tau);
std::complex<double> phi(const PhysicalScenario& s, const PhaseSpacePoint& p,
                         std::complex<double> tau);

// Log of the Gaussian envelope exp(-(xi1 + xi2*tau)^2 / (2 sigma_tau^2)).
// For real tau, Re(phi) = envelope(x_tilde, -v_tilde, t - tau) + envelope(x0, v0, tau).
double gaussian_envelope_log(const PhysicalScenario& s, double xi1, double xi2, double tau);

// Validates that p lies in the open positive quadrant. Throws input_error.
void validate_point(const PhaseSpacePoint& p);

}  // namespace husimi
