#pragma once

#include <complex>
#include <vector>

namespace aperture::specfun {

// Cylinder functions of orders 0 and 1 in double precision. J is accurate to
// better than 1e-12 relative on [0, 100] and Y to better than 1e-10 on
// [1e-3, 100], with errors near the zeros measured against the oscillation
// envelope sqrt(2/(pi x)). Evaluation runs in long double: Maclaurin-type
// series up to x = 16 and the Hankel large-argument expansion beyond; the
// crossover is covered by the Wronskian test suite.

/// J_order(x), order in {0,1}, x >= 0 finite.
double bessel_j(int order, double x);

/// Y_order(x), order in {0,1}, x > 0 finite (logarithmic singularity at 0).
double bessel_y(int order, double x);

/// H^(1)_order(x) = J_order(x) + i Y_order(x), exact composition of the two.
std::complex<double> hankel1(int order, double x);

/// J_0..J_n by Miller backward recurrence (stable for every n); the analytic
/// disc series needs orders up to roughly k*radius + 40.
std::vector<double> bessel_j_seq(int n_max, double x);

/// Y_0..Y_n by forward recurrence (the growing solution, stable upward).
/// Entries may overflow to -inf for n far above x; callers dividing by these
/// values treat that as a vanishing ratio.
std::vector<double> bessel_y_seq(int n_max, double x);

/// H^(1)_0..H^(1)_n componentwise from the two sequences above.
std::vector<std::complex<double>> hankel1_seq(int n_max, double x);

}  // namespace aperture::specfun
