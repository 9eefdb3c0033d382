#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "husimi/aperture.hpp"
#include "husimi/errors.hpp"
#include "husimi/gaussian.hpp"
#include "husimi/quadrature.hpp"
#include "husimi/residue.hpp"
#include "test_helpers.hpp"

using namespace husimi;
using namespace husimi::testing;

namespace {

// Distance from tau0 to the nearest other singularity, for circle sizing.
double tau0_clearance(const FrozenConstants& fc, const ApodizationBarrier& a) {
  double r = std::abs(fc.tau1 - fc.tau0);
  for (const auto& zj : chi_poles_all(a)) r = std::min(r, std::abs(zj - fc.tau0));
  return r;
}

std::complex<double> frozen_integrand(const FrozenConstants& fc, const ApodizationBarrier& a,
                                      std::complex<double> tau) {
  return fc.omega_prefactor * chi_eval(a, tau) * std::exp(phi(fc, tau));
}

}  // namespace

TEST_CASE("partial-fraction coefficients match an independent linear solve") {
  const PhysicalScenario s = dimensionless_scenario();
  const FrozenConstants fc = frozen_constants(s, point(10.0, 1.0));

  for (int n : {2, 4, 6, 8, 10}) {
    const PoleData pd = mapped_poles(fc, barrier(n, 10.0, 10.0));
    REQUIRE(static_cast<int>(pd.zj.size()) == n);
    REQUIRE(static_cast<int>(pd.Aj.size()) == n);

    // Collocation at n fresh points w_s: sum_j c_j / (w_s - z_j) must equal
    // (w_s + Z)^{n-2} / prod_j (w_s - z_j); solve for c and compare.  One
    // point near each pole keeps the system diagonally dominant even though
    // the poles cluster tightly.
    Eigen::MatrixXcd M(n, n);
    Eigen::VectorXcd rhs(n);
    for (int row = 0; row < n; ++row) {
      double nearest = std::numeric_limits<double>::infinity();
      for (int col = 0; col < n; ++col) {
        if (col != row)
          nearest = std::min(nearest, std::abs(pd.zj[static_cast<size_t>(row)] -
                                               pd.zj[static_cast<size_t>(col)]));
      }
      const double theta = 2.0 * std::numbers::pi * (row + 0.4) / n;
      const std::complex<double> w =
          pd.zj[static_cast<size_t>(row)] + std::polar(0.4 * nearest, theta);
      std::complex<double> target = 1.0;
      for (int q = 0; q < n - 2; ++q) target *= (w + fc.Z);
      for (int col = 0; col < n; ++col) {
        M(row, col) = 1.0 / (w - pd.zj[static_cast<size_t>(col)]);
        target /= (w - pd.zj[static_cast<size_t>(col)]);
      }
      rhs(row) = target;
    }
    const Eigen::VectorXcd c = M.colPivHouseholderQr().solve(rhs);
    for (int j = 0; j < n; ++j) {
      CHECK(rel_diff(pd.Aj[static_cast<size_t>(j)], c(j)) < 1e-8);
    }

    // The first n/2 mapped poles come from the upper-half barrier poles.
    for (int j = 0; j < n / 2; ++j) {
      CHECK(pd.Zj[static_cast<size_t>(j)].imag() > 0.0);
    }
    for (int j = n / 2; j < n; ++j) {
      CHECK(pd.Zj[static_cast<size_t>(j)].imag() < 0.0);
    }
  }
}

TEST_CASE("essential-singularity residue matches a brute-force double sum") {
  const PhysicalScenario s = dimensionless_scenario();
  const FrozenConstants fc = frozen_constants(s, point(10.0, 1.0));
  const ApodizationBarrier a = barrier(2, 5.0, 10.0);
  const PoleData pd = mapped_poles(fc, a);

  const auto [res, diag] = essential_residue(fc, pd, 1e-12);
  CHECK(diag.bessel_terms_used > 0);
  CHECK(diag.last_term_magnitude <= 1e-12);

  // Independent evaluation with oracle Bessel values and naive powers.
  const std::complex<double> b =
      2.0 * fc.sqrt_T0T1() / (fc.tau1 - fc.tau0);
  CHECK(rel_diff(b, diag.bessel_argument) < 1e-14);
  std::complex<double> brute{0.0, 0.0};
  for (size_t j = 0; j < pd.zj.size(); ++j) {
    std::complex<double> inner{0.0, 0.0};
    std::complex<double> zpow{1.0, 0.0};
    double sign = 1.0;
    for (int k = 1; k <= 80; ++k) {
      zpow /= pd.zj[j];
      sign = -sign;
      inner += sign * zpow * bessel_series_oracle(k, b);
    }
    brute += pd.Aj[j] * inner;
  }
  brute *= -pd.prefactor_const;
  CHECK(rel_diff(res, brute) < 1e-10);
}

TEST_CASE("residue at tau0 equals a small contour around it") {
  const PhysicalScenario s = dimensionless_scenario();

  for (int n : {2, 4}) {
    for (double nu : {5.0, 20.0}) {
      for (double x : {9.0, 10.0, 11.5}) {
        const PhaseSpacePoint p = point(x, 1.0);
        const FrozenConstants fc = frozen_constants(s, p);
        const ApodizationBarrier a = barrier(n, nu, 10.0);
        const auto [res, diag] = residue_at_tau0(fc, a, 1e-12);
        (void)diag;

        const auto fn = [&](std::complex<double> tau) {
          return frozen_integrand(fc, a, tau);
        };
        const std::complex<double> circ =
            contour_circle_integral(fn, fc.tau0, 0.5 * tau0_clearance(fc, a), 512);
        CHECK(rel_diff(res.to_complex(), circ) < 1e-8);
      }
    }
  }
}

TEST_CASE("contour value is radius-independent around tau0") {
  const PhysicalScenario s = dimensionless_scenario();
  const FrozenConstants fc = frozen_constants(s, point(10.0, 1.0));
  const ApodizationBarrier a = barrier(4, 10.0, 10.0);
  const auto fn = [&](std::complex<double> tau) { return frozen_integrand(fc, a, tau); };

  const double clearance = tau0_clearance(fc, a);
  const std::complex<double> ref =
      contour_circle_integral(fn, fc.tau0, 0.5 * clearance, 512);
  for (double frac : {0.3, 0.4, 0.6, 0.7}) {
    const std::complex<double> other =
        contour_circle_integral(fn, fc.tau0, frac * clearance, 512);
    CHECK(rel_diff(other, ref) < 1e-8);
  }
}

TEST_CASE("barrier-pole residues match small contours around each pole") {
  const PhysicalScenario s = dimensionless_scenario();
  const FrozenConstants fc = frozen_constants(s, point(10.0, 1.0));

  for (int n : {2, 6}) {
    const ApodizationBarrier a = barrier(n, 10.0, 10.0);
    const std::vector<ScaledComplex> r = pole_residues_chi(fc, a);
    const auto poles = chi_poles_all(a);
    REQUIRE(r.size() == poles.size());

    // Pole spacing sets the safe contour radius.
    const double radius = 0.2 * (2.0 / a.nu) * std::sin(std::numbers::pi / n);
    const auto fn = [&](std::complex<double> tau) { return frozen_integrand(fc, a, tau); };
    for (size_t j = 0; j < poles.size(); ++j) {
      const std::complex<double> circ = contour_circle_integral(fn, poles[j], radius, 512);
      CHECK(rel_diff(r[j].to_complex(), circ) < 1e-8);
    }
  }
}

TEST_CASE("closed-contour amplitude is invariant under the root-branch flip") {
  const PhysicalScenario s = dimensionless_scenario();
  const PhaseSpacePoint p = point(10.0, 1.0);
  const FrozenConstants fc = frozen_constants(s, p);
  FrozenConstants flipped = fc;
  flipped.Z = -fc.Z;

  for (int n : {2, 4}) {
    const ApodizationBarrier a = barrier(n, 5.0, 10.0);
    const auto [f1, d1] = f_froz_analytic(fc, s, p, a, 1e-12);
    const auto [f2, d2] = f_froz_analytic(flipped, s, p, a, 1e-12);
    (void)d1;
    (void)d2;
    CHECK(rel_diff(f1.to_complex(), f2.to_complex()) < 1e-12);
  }
}

TEST_CASE("closed contour matches direct quadrature within the tail bound") {
  const PhysicalScenario s = dimensionless_scenario();
  QuadratureConfig cfg;

  for (int n : {2, 4}) {
    for (double nu : {5.0, 20.0}) {
      const ApodizationBarrier a = barrier(n, nu, 10.0);
      for (double x : {9.0, 10.0, 11.0}) {
        const PhaseSpacePoint p = point(x, 1.0);
        const FrozenConstants fc = frozen_constants(s, p);
        const auto [fa, diag] = f_froz_analytic(fc, s, p, a, 1e-12);
        const QuadratureResult fq = f_froz_quadrature(s, p, a, cfg);
        REQUIRE(fq.converged);
        const double diff = std::abs(fa.to_complex() - fq.value);
        CHECK(diff <= diag.i_tail_bound + 10.0 * fq.error_estimate);
        CHECK(diag.i_tail_bound == error_bound_tails(fc, s, p, a, s.t));
      }
    }
  }
}

TEST_CASE("tail bound shrinks monotonically as the window sharpens") {
  const PhysicalScenario s = dimensionless_scenario();
  const PhaseSpacePoint p = point(10.0, 1.0);
  const FrozenConstants fc = frozen_constants(s, p);

  double prev = std::numeric_limits<double>::infinity();
  for (double nu = 5.0; nu <= 5.0 * 1024.0; nu *= 2.0) {
    const double bound = error_bound_tails(fc, s, p, barrier(2, nu, 10.0), s.t);
    CHECK(bound < prev);
    CHECK(bound > 0.0);
    prev = bound;
  }
}

TEST_CASE("grating amplitude is the slit-weighted sum of barrier amplitudes") {
  const PhysicalScenario s = dimensionless_scenario();
  const PhaseSpacePoint p = point(10.0, 1.0);
  const FrozenConstants fc = frozen_constants(s, p);
  const TimeGrating g = grating2(2, 5.0, 8.0, 12.0);

  const auto [fg, dg] = f_froz_analytic(fc, s, p, g, 1e-12);
  (void)dg;
  const auto [f0, d0] = f_froz_analytic(fc, s, p, g.slits[0], 1e-12);
  const auto [f1, d1] = f_froz_analytic(fc, s, p, g.slits[1], 1e-12);
  (void)d0;
  (void)d1;
  const std::complex<double> expected = 0.5 * (f0.to_complex() + f1.to_complex());
  CHECK(rel_diff(fg.to_complex(), expected) < 1e-12);
}

TEST_CASE("degenerate pole configurations are rejected") {
  const PhysicalScenario s = dimensionless_scenario();
  const FrozenConstants fc = frozen_constants(s, point(10.0, 1.0));
  // tau0 sits exactly on a barrier pole: tau0 = i, pole at t_op + i/nu with
  // nu = 1, t_op = 0.
  CHECK_THROWS_AS(mapped_poles(fc, barrier(2, 1.0, 0.0)), numeric_error);
}
