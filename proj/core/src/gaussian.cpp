#include "husimi/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "husimi/errors.hpp"

namespace husimi {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;
}  // namespace

void validate_point(const PhaseSpacePoint& p) {
    if (!(p.x_tilde > 0.0)) throw input_error("point: x_tilde must be positive");
    if (!(p.v_tilde > 0.0)) throw input_error("point: v_tilde must be positive");
}

std::complex<double> psi_initial(const PhysicalScenario& s, double center_x,
                                 double center_v, double x) {
    const double dx = x - center_x;
    const double norm = std::pow(kPi * s.sigma * s.sigma, -0.25);
    const std::complex<double> expo =
        -dx * dx / (2.0 * s.sigma * s.sigma) + kI * (s.mass * center_v / s.hbar) * dx;
    return norm * std::exp(expo);
}

std::complex<double> free_propagator(const PhysicalScenario& s, double xi, double tau) {
    if (!(tau > 0.0)) throw input_error("free_propagator: tau must be positive");
    const std::complex<double> pref =
        std::sqrt(s.mass / (2.0 * kI * kPi * s.hbar * tau));
    return pref * std::exp(kI * s.mass * xi * xi / (2.0 * s.hbar * tau));
}

double sigma_tau(const PhysicalScenario& s, double tau) {
    const double r = s.hbar * tau / (s.mass * s.sigma * s.sigma);
    return s.sigma * std::sqrt(1.0 + r * r);
}

std::complex<double> psi_free(const PhysicalScenario& s, double center_x,
                              double center_v, double x, double tau) {
    if (tau < 0.0) throw input_error("psi_free: tau must be nonnegative");
    const double x_tau = center_x + center_v * tau;
    const double st = sigma_tau(s, tau);
    const double dx = x - x_tau;
    const double spread = s.hbar * tau / (s.mass * s.sigma * s.sigma);
    const double gauss = dx * dx / (2.0 * st * st);
    const double S = gauss * spread + s.mass * center_v * dx / s.hbar +
                     s.mass * center_v * center_v * tau / (2.0 * s.hbar) -
                     0.5 * std::atan(spread);
    return std::pow(kPi * st * st, -0.25) * std::exp(std::complex<double>(-gauss, S));
}

std::complex<double> alpha_tau(const PhysicalScenario& s, std::complex<double> tau) {
    const std::complex<double> denom =
        1.0 + kI * s.hbar * tau / (s.mass * s.sigma * s.sigma);
    if (std::abs(denom) == 0.0) {
        throw numeric_error("alpha_tau: tau coincides with the width pole i*m*sigma^2/hbar");
    }
    return 1.0 / (2.0 * s.sigma * s.sigma * denom);
}

FrozenConstants frozen_constants(const PhysicalScenario& s, const PhaseSpacePoint& p) {
    validate_scenario(s);
    validate_point(p);

    const double lam = s.lambda_bar();
    const double lam_t = p.lambda_bar_tilde(s);
    const double sig2 = s.sigma * s.sigma;
    const double msq = s.mass * sig2 / s.hbar;  // time scale m sigma^2 / hbar
    const double a0 = (s.sigma / lam) * (s.sigma / lam);
    const double at = (s.sigma / lam_t) * (s.sigma / lam_t);
    const std::complex<double> q0 = 1.0 + kI * lam * std::abs(s.x0) / sig2;
    const std::complex<double> qt = 1.0 + kI * lam_t * p.x_tilde / sig2;

    FrozenConstants fc;
    fc.tau0 = kI * msq;
    fc.tau1 = s.t - kI * msq;
    fc.T0 = -0.5 * kI * a0 * q0 * q0 * msq;
    fc.T1 = 0.5 * kI * at * qt * qt * msq;
    fc.Z = std::sqrt(fc.T0 / fc.T1);
    fc.omega_log = -0.5 * at - 0.5 * a0;
    fc.omega_prefactor =
        (0.5 / std::sqrt(kPi)) * ((p.v_tilde / s.sigma) * qt + (s.v0 / s.sigma) * q0);
    return fc;
}

std::complex<double> phi(const FrozenConstants& fc, std::complex<double> tau) {
    const std::complex<double> d0 = tau - fc.tau0;
    const std::complex<double> d1 = tau - fc.tau1;
    if (std::abs(d0) == 0.0 || std::abs(d1) == 0.0) {
        throw numeric_error("phi: tau coincides with a pole (tau0 or tau1)");
    }
    return fc.T0 / d0 + fc.T1 / d1 + fc.omega_log;
}

std::complex<double> phi(const PhysicalScenario& s, const PhaseSpacePoint& p,
                         std::complex<double> tau) {
    return phi(frozen_constants(s, p), tau);
}

double gaussian_envelope_log(const PhysicalScenario& s, double xi1, double xi2, double tau) {
    const double st = sigma_tau(s, tau);
    const double u = xi1 + xi2 * tau;
    return -u * u / (2.0 * st * st);
}

}  // namespace husimi
