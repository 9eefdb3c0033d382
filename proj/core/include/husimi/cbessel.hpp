#pragma once

#include <complex>
#include <vector>

namespace husimi {

// Bessel functions of the first kind, J_0(z) .. J_{k_max}(z), for complex z.
//
// Evaluation strategy:
//   |z| < 10    ascending power series per order, with the (z/2)^k / k!
//               prefactor formed in log space so that high orders underflow
//               cleanly to zero instead of overflowing intermediates.
//   |z| >= 10   downward (Miller) recurrence started at
//               k_start = k_max + ceil(|z|) + 40, carried with log-scaled
//               storage, then normalized with the Jacobi-Anger sum
//                   J_0 + 2 sum_{k>=1} w^k J_k = exp(i z s),  w = e^{i pi s/2}
//               where s = -1 for Im z >= 0 and s = +1 otherwise.  The sum's
//               magnitude e^{|Im z|} matches the largest terms, so the
//               normalization is cancellation-free for any complex z; the
//               classic even-order sum (J_0 + 2 sum J_{2k} = 1) loses about
//               |Im z| / ln(10) digits and is kept only as a test identity
//               for real arguments.
//
// Throws numeric_error when |z| > z_cap: far outside the regime this
// evaluator is validated for, callers must switch representations instead
// of trusting silently degraded values.
std::vector<std::complex<double>> bessel_j_sequence(int k_max, std::complex<double> z,
                                                    double z_cap = 1e3);

}  // namespace husimi
