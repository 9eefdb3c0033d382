#pragma once

#include <map>
#include <string>

namespace husimi {

// One atomic mass unit in kg (CODATA 2018); fixed conversion for `mass_u`.
inline constexpr double kAtomicMassUnitKg = 1.66053906660e-27;

// Default reduced Planck constant in J*s, overridable for dimensionless work.
inline constexpr double kDefaultHbar = 1.0545718e-34;

// Incident matter wave and evolution window: a minimum-uncertainty Gaussian of
// width sigma centered at x0 < 0 moving with velocity v0 > 0 toward a barrier
// at the origin, observed at time t. SI and dimensionless scenarios share this
// one type; dimensionless work just sets mass = hbar = 1 explicitly.
struct PhysicalScenario {
    double mass = 0.0;          // kg
    double hbar = kDefaultHbar; // J*s
    double sigma = 0.0;         // m
    double x0 = 0.0;            // m, < 0
    double v0 = 0.0;            // m/s, > 0
    double t = 0.0;             // s, > 0

    // Classical hitting time |x0|/v0: when the packet center reaches the barrier.
    double t_c() const { return -x0 / v0; }

    // Reduced de Broglie wavelength hbar/(m v0) of the incident packet.
    double lambda_bar() const { return hbar / (mass * v0); }
};

// Phase-space evaluation coordinate of the Husimi distribution. The
// transmitted state lives in the positive quadrant (x > 0, v > 0).
struct PhaseSpacePoint {
    double x_tilde = 0.0;  // m, > 0
    double v_tilde = 0.0;  // m/s, > 0

    double lambda_bar_tilde(const PhysicalScenario& s) const {
        return s.hbar / (s.mass * v_tilde);
    }
    double t_tilde() const { return x_tilde / v_tilde; }
};

// Frozen-regime diagnostics. The supporting parameter chain is
//   sigma << |x0| <~ v0 (t - t_c) << m sigma^2 v0 / hbar,
// together with hbar t / (m sigma^2) << 1 (the packet does not spread by t).
struct RegimeReport {
    std::map<std::string, double> ratios;
    bool passed = false;
    double margin_factor = 10.0;
};

// Parses a scenario config (JSON text). Keys: `mass_u` or `mass_kg`,
// `sigma_m`, `x0_m`, `v0_mps`, `t_s`, optional `hbar`. Unknown keys are
// rejected. Throws input_error naming the offending field.
PhysicalScenario load_scenario(const std::string& config_text);

// Emits a config text that load_scenario round-trips bit-identically.
std::string serialize_scenario(const PhysicalScenario& s);

// Validates invariants of an already-constructed scenario (used by loaders
// and by callers constructing scenarios in code). Throws input_error.
void validate_scenario(const PhysicalScenario& s);

// Computes the frozen-regime ratios and the pass verdict. The two spreading
// ratios hbar(t - t_c)/(m sigma^2) and hbar t/(m sigma^2) must stay below
// 1/margin_factor; the geometric links sigma/|x0| and |x0|/(v0(t-t_c)) are
// gated at fixed thresholds (1/2 and 2) so the verdict is monotone in
// margin_factor. Requires margin_factor >= 1.
RegimeReport check_frozen_regime(const PhysicalScenario& s, double margin_factor = 10.0);

}  // namespace husimi
