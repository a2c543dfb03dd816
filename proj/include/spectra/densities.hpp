#pragma once

#include <string_view>

namespace spectra {

/// Closed-form reference laws the empirical statistics are compared against.
///
/// Spacing laws use the unit-mean convention. The GUE surmise is
/// (32/pi^2) x^2 exp(-4x^2/pi), the member of that family with unit area and
/// unit mean. MontgomeryPairCorrelation is the kernel 1 - (sin(pi x)/(pi x))^2;
/// it is a correlation function, not a probability density.
struct ReferenceDensity {
    enum class Kind { Semicircle, WignerGOE, WignerGUE, PoissonSpacing, Weibull, PoissonCount, MontgomeryPairCorrelation };

    Kind kind = Kind::Semicircle;
    double shape = 1.0;    // Weibull k
    double scale = 1.0;    // Weibull lambda
    unsigned points = 0;   // PoissonCount j

    static ReferenceDensity semicircle() { return {Kind::Semicircle}; }
    static ReferenceDensity wigner_goe() { return {Kind::WignerGOE}; }
    static ReferenceDensity wigner_gue() { return {Kind::WignerGUE}; }
    static ReferenceDensity poisson_spacing() { return {Kind::PoissonSpacing}; }
    static ReferenceDensity montgomery() { return {Kind::MontgomeryPairCorrelation}; }
    static ReferenceDensity poisson_count(unsigned j) { return {Kind::PoissonCount, 1.0, 1.0, j}; }
    /// Throws std::invalid_argument unless k > 0 and lambda > 0.
    static ReferenceDensity weibull(double k, double lambda);
};

std::string_view to_string(ReferenceDensity::Kind kind) noexcept;

double density_eval(const ReferenceDensity& ref, double x);

/// Cumulative distribution of a continuous law. Throws std::invalid_argument for
/// MontgomeryPairCorrelation, which has no CDF.
double cdf_eval(const ReferenceDensity& ref, double x);

struct WeibullStats {
    double mean;
    double median;
    /// lambda ((k-1)/k)^(1/k) for k > 1; 0 (boundary mode) otherwise.
    double mode;
};

WeibullStats weibull_stats(double k, double lambda);

/// Moments of (2/pi) sqrt(1 - x^2) on [-1, 1]: 0 for odd k, C_{k/2} / 4^{k/2} for even k.
double semicircle_moment(unsigned k);

/// sin(x)/x with the removable singularity filled in.
double sinc(double x) noexcept;

}  // namespace spectra
