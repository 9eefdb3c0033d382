#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace husimi {

// Complex amplitude stored as mantissa * exp(log_offset).
//
// The analytic Husimi machinery multiplies factors like exp(-(sigma/lambdabar)^2/2)
// (magnitude e^-7585 for cold-atom parameters) against exponentials of the same
// size and opposite sign. Each factor under/overflows IEEE double while every
// final amplitude is O(1), so all intermediate amplitudes are carried in this
// form and exponents are only ever combined in log space.
//
// Invariant: |mantissa| in [1, e) after normalize(), except the exact zero,
// which is represented as (0, 0).
struct ScaledComplex {
    std::complex<double> mantissa{0.0, 0.0};
    double log_offset = 0.0;

    static ScaledComplex zero() { return ScaledComplex{}; }

    static ScaledComplex from(std::complex<double> v) {
        ScaledComplex r{v, 0.0};
        r.normalize();
        return r;
    }

    static ScaledComplex from_parts(std::complex<double> m, double offset) {
        ScaledComplex r{m, offset};
        r.normalize();
        return r;
    }

    // exp(w) for complex w whose real part may be far outside double range.
    static ScaledComplex exp_of(std::complex<double> w) {
        return ScaledComplex{std::polar(1.0, w.imag()), w.real()};
    }

    bool is_zero() const { return mantissa.real() == 0.0 && mantissa.imag() == 0.0; }

    ScaledComplex& normalize() {
        if (is_zero()) {
            log_offset = 0.0;
            return *this;
        }
        const double la = std::log(std::abs(mantissa));
        const double k = std::floor(la);
        if (k != 0.0) {
            mantissa *= std::exp(-k);
            log_offset += k;
        }
        return *this;
    }

    // log |value|; -infinity for the exact zero.
    double log_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log(std::abs(mantissa)) + log_offset;
    }

    double abs() const { return std::exp(log_abs()); }

    // Collapse to a plain complex. Under/overflows by design when the value is
    // not representable; callers wanting a density (|f|^2) should combine
    // log_abs() values instead.
    std::complex<double> to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        const double s = std::exp(log_offset);
        if (s > 0.0 && std::isfinite(s)) return mantissa * s;
        return std::polar(std::exp(log_abs()), std::arg(mantissa));
    }

    ScaledComplex operator-() const { return ScaledComplex{-mantissa, log_offset}; }

    friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        ScaledComplex r{a.mantissa * b.mantissa, a.log_offset + b.log_offset};
        r.normalize();
        return r;
    }

    friend ScaledComplex operator*(const ScaledComplex& a, std::complex<double> c) {
        if (a.is_zero() || (c.real() == 0.0 && c.imag() == 0.0)) return zero();
        ScaledComplex r{a.mantissa * c, a.log_offset};
        r.normalize();
        return r;
    }

    friend ScaledComplex operator*(std::complex<double> c, const ScaledComplex& a) {
        return a * c;
    }

    friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const bool a_high = a.log_offset >= b.log_offset;
        const ScaledComplex& hi = a_high ? a : b;
        const ScaledComplex& lo = a_high ? b : a;
        ScaledComplex r{hi.mantissa + lo.mantissa * std::exp(lo.log_offset - hi.log_offset),
                        hi.log_offset};
        r.normalize();
        return r;
    }

    friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) {
        return a + (-b);
    }
};

}  // namespace husimi
