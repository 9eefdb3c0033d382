#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "husimi/aperture.hpp"
#include "husimi/scaled_complex.hpp"
#include "husimi/scenario.hpp"

namespace husimi {

// The two saddle exponents of the narrow-slit amplitude,
//   gamma_0 = T0 / (t_op - tau0),  gamma_1 = T1 / (t_op - tau1),
// stored through their rationalized closed forms.  Construction cross-checks
// the closed forms against the direct complex divisions; disagreement means
// a transcription defect and raises numeric_error.
struct SlitGamma {
  double re_gamma0 = 0.0;
  double im_gamma0 = 0.0;
  double re_gamma1 = 0.0;
  double im_gamma1 = 0.0;
};

SlitGamma gamma_components(const PhysicalScenario& s, const PhaseSpacePoint& p, double t_op);

// Narrow-slit amplitude (pi/nu) Omega exp(gamma0 + gamma1).  Valid as the
// leading order of the n=2 frozen amplitude for nu >> 1; no hard regime
// check, the caller owns that judgement.
ScaledComplex f_1slit(const PhysicalScenario& s, const PhaseSpacePoint& p, double nu,
                      double t_op);

// |f_1slit|^2 via the real exponent directly (no complex round trip).
double husimi_1slit(const PhysicalScenario& s, const PhaseSpacePoint& p, double nu, double t_op);

// Explicit form of husimi_1slit at the symmetric configuration t_op = t_c,
// t = 2 t_c: the envelope Gaussian times the algebraic prefactor.  Requires
// s.t = 2 t_c within 1e-9 relative.
double husimi_1slit_symmetric(const PhysicalScenario& s, const PhaseSpacePoint& p, double nu);

// Linear superposition of single-slit amplitudes with the grating weight.
// Only defined for n = 2 gratings (the narrow-slit reduction is Lorentzian).
ScaledComplex f_multislit(const PhysicalScenario& s, const PhaseSpacePoint& p,
                          const TimeGrating& grating);

// Double-slit distribution in the structured form
//   (pi / 8 sigma^2 nu^2) g1 e^{g2} (cosh f1 + cos f2),
// with the ingredients exposed for fringe analysis.  Assembled from the
// gamma compositions, valid for any final time; evaluated as a sum of
// exp(g2 +- f1) so large f1 never overflows an intermediate cosh.
struct TwoSlitStructured {
  double value = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
};

TwoSlitStructured husimi_2slit_structured(const PhysicalScenario& s, const PhaseSpacePoint& p,
                                          double nu, double t_op0, double t_op1);

// The g2/f1/f2 polynomials specialized to t = 2 t_c with slits symmetric
// about t_c (t - t_op0 = t_op1).  Kept as an independent transcription of
// the specialized algebra; equality with the composed forms is a permanent
// regression test, not a runtime branch.
TwoSlitStructured husimi_2slit_symmetric(const PhysicalScenario& s, const PhaseSpacePoint& p,
                                         double nu, double t_op0, double t_op1);

// Bright-fringe line v~ = alpha x~ + beta through phase space.  Leading
// order alpha = 1/t_c, beta = 0; alpha_exact is the positive root of the
// quadratic in the slope (the negative root is discarded).  Requires the
// slits symmetric about t_c within 1e-9 relative; asymmetric slits must go
// through numeric peak finding instead.
struct FringeLine {
  double alpha = 0.0;        // 1/s
  double beta = 0.0;         // m/s
  double alpha_exact = 0.0;  // 1/s
  double epsilon = 0.0;      // (t_op1 - t_op0) / (2 t_c)
  bool epsilon_large = false;  // epsilon > 0.3: the fringe formulas degrade
};

FringeLine fringe_line(const PhysicalScenario& s, double t_op0, double t_op1);

// Analytic fringe positions x~_k = |x0| sqrt(1 + 2 hbar k pi / (m v0^2 dT)),
// v~_k on the fringe line; even k are bright, odd k dark.  Indices whose
// radicand is not positive are skipped and recorded in `omitted`.
struct FringePoint {
  int k = 0;
  double x_tilde = 0.0;  // m
  double v_tilde = 0.0;  // m/s
  bool bright = false;
};

struct FringeSet {
  int k_min = 0;
  int k_max = 0;
  std::vector<FringePoint> points;
  std::vector<int> omitted;
};

FringeSet fringe_positions(const PhysicalScenario& s, double t_op0, double t_op1, int k_min,
                           int k_max);

// Samples the provided distribution along v~ = v0 x~ / |x0|, brackets every
// interior extremum, and refines each by golden section to 1e-6 relative in
// x~.  The evaluator choice (quadrature-backed or closed-form) is the
// caller's.
struct LineExtremum {
  double x_tilde = 0.0;
  double v_tilde = 0.0;
  bool is_max = false;
};

std::vector<LineExtremum> find_peaks_on_line(
    const PhysicalScenario& s, double x_lo, double x_hi, int samples,
    const std::function<double(const PhaseSpacePoint&)>& evaluate);

}  // namespace husimi
