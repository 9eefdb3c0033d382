#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "husimi/scaled_complex.hpp"
#include "test_helpers.hpp"

using namespace husimi;
using namespace husimi::testing;

namespace {

const std::vector<std::complex<double>> kSamples = {
    {1.0, 0.0},    {0.0, 1.0},        {-2.5, 3.25},    {1e-8, -4.0},
    {7e5, 2e5},    {-0.125, -0.125},  {3.0, -1e-12},   {-1e-6, 1e6},
};

}  // namespace

TEST_CASE("round trip and normalization invariant") {
  for (const auto& v : kSamples) {
    ScaledComplex sc = ScaledComplex::from(v);
    CHECK(rel_diff(sc.to_complex(), v) < 1e-15);
    const double m = std::abs(sc.mantissa);
    CHECK(m >= 1.0);
    CHECK(m < std::exp(1.0) * (1.0 + 1e-15));
  }
  CHECK(ScaledComplex::zero().is_zero());
  CHECK(ScaledComplex::from({0.0, 0.0}).is_zero());
  CHECK(ScaledComplex::zero().to_complex() == std::complex<double>(0.0, 0.0));
}

TEST_CASE("exp of moderate and extreme exponents") {
  for (const auto& w : kSamples) {
    if (std::abs(w.real()) > 600.0) continue;
    CHECK(rel_diff(ScaledComplex::exp_of(w).to_complex(), std::exp(w)) < 1e-13);
  }

  // Far outside double range: the logarithm is still exact.
  const ScaledComplex tiny = ScaledComplex::exp_of({-5000.0, 1.25});
  CHECK(tiny.log_abs() == doctest::Approx(-5000.0).epsilon(1e-15));
  const ScaledComplex huge = ScaledComplex::exp_of({5000.0, -0.5});
  CHECK(huge.log_abs() == doctest::Approx(5000.0).epsilon(1e-15));
  // Their product is O(1) even though neither factor is representable.
  CHECK(rel_diff((tiny * huge).to_complex(), std::exp(std::complex<double>(0.0, 0.75))) <
        1e-13);
}

TEST_CASE("arithmetic agrees with plain complex arithmetic") {
  for (const auto& a : kSamples) {
    for (const auto& b : kSamples) {
      const ScaledComplex sa = ScaledComplex::from(a);
      const ScaledComplex sb = ScaledComplex::from(b);
      CHECK(rel_diff((sa * sb).to_complex(), a * b) < 1e-13);
      CHECK(rel_diff((sa * b).to_complex(), a * b) < 1e-13);
      CHECK(rel_diff((b * sa).to_complex(), a * b) < 1e-13);
      if (std::abs(a + b) > 1e-12 * std::max(std::abs(a), std::abs(b))) {
        CHECK(rel_diff((sa + sb).to_complex(), a + b) < 1e-12);
      }
      if (std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b))) {
        CHECK(rel_diff((sa - sb).to_complex(), a - b) < 1e-12);
      }
    }
  }
}

TEST_CASE("addition across widely separated magnitudes") {
  const ScaledComplex one = ScaledComplex::exp_of({0.0, 0.0});
  const ScaledComplex negligible = ScaledComplex::exp_of({-10000.0, 0.3});
  CHECK(rel_diff((one + negligible).to_complex(), {1.0, 0.0}) < 1e-15);
  CHECK(rel_diff((negligible + one).to_complex(), {1.0, 0.0}) < 1e-15);

  // Exact cancellation collapses to the canonical zero.
  const ScaledComplex w = ScaledComplex::exp_of({123.0, 0.7});
  CHECK((w - w).is_zero());
  CHECK((w - w).log_abs() == -std::numeric_limits<double>::infinity());

  // Zero is the additive identity and annihilates under multiplication.
  CHECK(rel_diff((ScaledComplex::zero() + w).to_complex(), w.to_complex()) < 1e-15);
  CHECK((ScaledComplex::zero() * w).is_zero());
  CHECK((-ScaledComplex::zero()).is_zero());
}

TEST_CASE("log magnitude composes additively under products") {
  const ScaledComplex a = ScaledComplex::exp_of({-7583.0, 0.4});
  const ScaledComplex b = ScaledComplex::exp_of({-7583.0, -0.4});
  const ScaledComplex c = ScaledComplex::exp_of({15166.0, 0.0});
  const ScaledComplex prod = a * b * c;
  CHECK(prod.log_abs() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rel_diff(prod.to_complex(), {1.0, 0.0}) < 1e-12);
  CHECK(a.abs() == 0.0);  // underflows as a plain double, by design
}

TEST_CASE("density evaluation through log magnitudes") {
  // |f|^2 for f of magnitude e^-200: representable only via log_abs.
  const ScaledComplex f = ScaledComplex::exp_of({-200.0, 1.0});
  const double density = std::exp(2.0 * f.log_abs());
  CHECK(density == doctest::Approx(std::exp(-400.0)).epsilon(1e-12));
}
