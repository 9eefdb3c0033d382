#pragma once

#include <complex>
#include <string>
#include <vector>

namespace husimi {

// Smooth algebraic window chi_n(tau) = 1 / (1 + nu^n (tau - t_op)^n), n even.
// Fully transparent at the opening time t_op, width 1/nu; n = 2 is a
// Lorentzian. Even n keeps 0 <= chi_n <= 1 on the real axis.
struct ApodizationBarrier {
    int n = 2;         // even, >= 2
    double nu = 1.0;   // 1/s, > 0 (inverse barrier width)
    double t_op = 0.0; // s (opening time)
};

// Equal-weight superposition of same-shape barriers with strictly increasing
// opening times: chi(tau) = (1/M) sum_i chi_n(tau; t_op_i). The 1/M weight
// keeps 0 <= chi <= 1.
struct TimeGrating {
    std::vector<ApodizationBarrier> slits;

    double weight() const { return 1.0 / static_cast<double>(slits.size()); }
};

// Witness for the decay of chi_n on large circles |z| = R: the barrier family
// falls off as 1/(nu^n R^(n-1)), which is what closing contours at infinity
// requires.
struct DecayWitness {
    bool satisfied = false;
    // The half-circle contribution R * max|chi_n| decays as
    // R^(-radial_decay_power); positive for every even n >= 2.
    int radial_decay_power = 0;
};

// Tail masses of chi outside the physical window [0, t]. Exact closed forms
// for n = 2; for n > 2 the same expressions are valid upper bounds provided
// nu*t_op >= 1 and nu*(t - t_op) >= 1.
struct TailIntegrals {
    double left = 0.0;   // integral of |chi| over (-inf, 0]
    double right = 0.0;  // integral of |chi| over [t, inf)
    bool exact = false;
};

void validate_barrier(const ApodizationBarrier& a);
void validate_grating(const TimeGrating& g);

// True when the opening time lies inside the physical window (0, t). Callers
// may still evaluate barriers violating this; the CLI warns about them.
bool opens_within_window(const ApodizationBarrier& a, double t);

double chi_eval(const ApodizationBarrier& a, double tau);
double chi_eval(const TimeGrating& g, double tau);

// Complex continuation. Throws numeric_error if z hits a pole to within
// floating-point resolution (denominator cancels below 1e-12 of its
// leading magnitude), since the value there would be pure roundoff noise.
std::complex<double> chi_eval(const ApodizationBarrier& a, std::complex<double> z);
std::complex<double> chi_eval(const TimeGrating& g, std::complex<double> z);

// All n simple poles t_op + (1/nu) exp((2j+1) i pi / n), j = 0..n-1.
std::vector<std::complex<double>> chi_poles_all(const ApodizationBarrier& a);

// The n/2 poles with positive imaginary part, sorted by real part then
// imaginary part; for gratings, the union over slits in the same order.
std::vector<std::complex<double>> chi_poles_upper(const ApodizationBarrier& a);
std::vector<std::complex<double>> chi_poles_upper(const TimeGrating& g);

DecayWitness decay_condition_ok(const ApodizationBarrier& a);

// Throws input_error naming the failing inequality when an n > 2 bound
// precondition is violated.
TailIntegrals tail_integrals(const ApodizationBarrier& a, double t);
TailIntegrals tail_integrals(const TimeGrating& g, double t);

// Parses a grating config (JSON text). Keys: `n`, `nu_hz` or
// `nu_dimensionless` (stored identically; the name records the intended unit
// system), `t_ops_s` (nonempty strictly increasing list).
TimeGrating load_grating(const std::string& config_text);

std::string serialize_grating(const TimeGrating& g);

// Integer power by repeated squaring (exact structure for the small even n
// used by the barrier family).
std::complex<double> cpow_int(std::complex<double> z, int n);

}  // namespace husimi
