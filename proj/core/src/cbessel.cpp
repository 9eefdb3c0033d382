#include "husimi/cbessel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "husimi/errors.hpp"

namespace husimi {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// J_k(z) by ascending series, sum_m (-1)^m (z/2)^{2m+k} / (m! (m+k)!).
// The prefactor (z/2)^k / k! is exponentiated from its logarithm; for orders
// where it underflows, the true value is below the subnormal range and zero
// is the correctly rounded result.
std::complex<double> series_jk(int k, std::complex<double> z) {
  const std::complex<double> half = 0.5 * z;
  const std::complex<double> log_pref =
      static_cast<double>(k) * std::log(half) - std::lgamma(static_cast<double>(k) + 1.0);
  const std::complex<double> pref = std::exp(log_pref);
  if (pref == std::complex<double>(0.0, 0.0)) return {0.0, 0.0};

  const std::complex<double> ratio_base = -half * half;
  std::complex<double> term{1.0, 0.0};
  std::complex<double> sum = term;
  int small_in_a_row = 0;
  for (int m = 1; m <= 400; ++m) {
    term *= ratio_base / (static_cast<double>(m) * static_cast<double>(m + k));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) {
      if (++small_in_a_row == 2) break;
    } else {
      small_in_a_row = 0;
    }
  }
  return pref * sum;
}

std::vector<std::complex<double>> miller_sequence(int k_max, std::complex<double> z) {
  const int k_start = k_max + static_cast<int>(std::ceil(std::abs(z))) + 40;

  // Unnormalized downward recurrence U_{k-1} = (2k/z) U_k - U_{k+1}, each
  // entry stored as mantissa[k] * exp(offset[k]); the running pair is
  // rescaled whenever it grows, which keeps every stored pair consistent.
  std::vector<std::complex<double>> mant(static_cast<size_t>(k_start) + 1);
  std::vector<double> offs(static_cast<size_t>(k_start) + 1, 0.0);
  std::complex<double> prev{0.0, 0.0};  // U_{k+1}
  std::complex<double> cur{1.0, 0.0};   // U_k
  double log_scale = 0.0;
  mant[static_cast<size_t>(k_start)] = cur;
  offs[static_cast<size_t>(k_start)] = 0.0;
  const std::complex<double> two_over_z = 2.0 / z;
  for (int k = k_start; k >= 1; --k) {
    std::complex<double> next = static_cast<double>(k) * two_over_z * cur - prev;
    double mag = std::abs(next);
    if (mag > 1e120) {
      next /= mag;
      cur /= mag;
      log_scale += std::log(mag);
    }
    mant[static_cast<size_t>(k - 1)] = next;
    offs[static_cast<size_t>(k - 1)] = log_scale;
    prev = cur;
    cur = next;
  }

  // Jacobi-Anger normalization, J_0 + 2 sum w^k J_k = exp(i z s) with
  // w = e^{i pi s / 2}; s = -1 keeps the target magnitude e^{+Im z}.
  const double s = (z.imag() >= 0.0) ? -1.0 : 1.0;
  const std::complex<double> w = (s < 0.0) ? std::complex<double>(0.0, -1.0)
                                           : std::complex<double>(0.0, 1.0);
  double off_ref = offs[0];
  for (double o : offs)
    if (o > off_ref) off_ref = o;
  std::complex<double> norm = mant[0] * std::exp(offs[0] - off_ref);
  std::complex<double> wp{1.0, 0.0};
  for (int k = 1; k <= k_start; ++k) {
    wp *= w;
    norm += 2.0 * wp * mant[static_cast<size_t>(k)] * std::exp(offs[static_cast<size_t>(k)] - off_ref);
  }
  if (norm == std::complex<double>(0.0, 0.0))
    throw numeric_error("bessel_j_sequence: downward-recurrence normalization sum vanished");

  const std::complex<double> target_exponent = kI * z * s;  // log of exp(i z s)
  const std::complex<double> phase = std::polar(1.0, target_exponent.imag());
  std::vector<std::complex<double>> out(static_cast<size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    const double mag = std::exp(offs[static_cast<size_t>(k)] - off_ref + target_exponent.real());
    out[static_cast<size_t>(k)] = (mant[static_cast<size_t>(k)] / norm) * phase * mag;
  }
  return out;
}

}  // namespace

std::vector<std::complex<double>> bessel_j_sequence(int k_max, std::complex<double> z,
                                                    double z_cap) {
  if (k_max < 0) throw input_error("bessel_j_sequence: k_max must be >= 0");
  if (!(z_cap > 0.0)) throw input_error("bessel_j_sequence: z_cap must be positive");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw input_error("bessel_j_sequence: argument must be finite");
  const double az = std::abs(z);
  if (az > z_cap)
    throw numeric_error("bessel_j_sequence: |z| = " + std::to_string(az) +
                        " exceeds the evaluation cap " + std::to_string(z_cap) +
                        "; switch representations instead of forcing this regime");

  std::vector<std::complex<double>> out(static_cast<size_t>(k_max) + 1);
  if (az == 0.0) {
    out[0] = {1.0, 0.0};
    return out;
  }
  if (az < 10.0) {
    for (int k = 0; k <= k_max; ++k) out[static_cast<size_t>(k)] = series_jk(k, z);
    return out;
  }
  return miller_sequence(k_max, z);
}

}  // namespace husimi
