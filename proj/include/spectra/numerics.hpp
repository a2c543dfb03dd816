#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace spectra {

/// Result of a numerical integration: value and an estimate of its absolute error.
struct Quadrature {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b]. Intervals are
/// bisected until the Kronrod-Gauss difference is below
/// max(abs_tol, rel_tol * |value|) in proportion to their length, or until
/// `max_depth` bisections have been made along a branch.
Quadrature integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-12,
                     double rel_tol = 1e-12, int max_depth = 40);

/// Complex digamma: upward recurrence until Re z > 8, then the six-term
/// asymptotic series. Throws std::domain_error at the poles z = 0, -1, -2, ...
std::complex<double> digamma(std::complex<double> z);

/// Principal-branch continuous log Gamma for Re z > 0, via upward shift to
/// Re z >= 10 and Stirling's series.
std::complex<double> log_gamma(std::complex<double> z);

}  // namespace spectra
