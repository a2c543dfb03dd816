#include "spectra/densities.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spectra {

using std::numbers::pi;

ReferenceDensity ReferenceDensity::weibull(double k, double lambda) {
    if (!(k > 0.0) || !(lambda > 0.0)) {
        throw std::invalid_argument("Weibull parameters must satisfy k > 0 and lambda > 0");
    }
    return {Kind::Weibull, k, lambda, 0};
}

std::string_view to_string(ReferenceDensity::Kind kind) noexcept {
    switch (kind) {
        case ReferenceDensity::Kind::Semicircle: return "semicircle";
        case ReferenceDensity::Kind::WignerGOE: return "wigner_goe";
        case ReferenceDensity::Kind::WignerGUE: return "wigner_gue";
        case ReferenceDensity::Kind::PoissonSpacing: return "poisson";
        case ReferenceDensity::Kind::Weibull: return "weibull";
        case ReferenceDensity::Kind::PoissonCount: return "poisson_count";
        case ReferenceDensity::Kind::MontgomeryPairCorrelation: return "montgomery";
    }
    return "unknown";
}

double sinc(double x) noexcept {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

namespace {

void check_weibull(const ReferenceDensity& ref) {
    if (!(ref.shape > 0.0) || !(ref.scale > 0.0)) {
        throw std::invalid_argument("Weibull parameters must satisfy k > 0 and lambda > 0");
    }
}

}  // namespace

double density_eval(const ReferenceDensity& ref, double x) {
    using K = ReferenceDensity::Kind;
    switch (ref.kind) {
        case K::Semicircle:
            return std::abs(x) <= 1.0 ? (2.0 / pi) * std::sqrt(1.0 - x * x) : 0.0;
        case K::WignerGOE:
            return x >= 0.0 ? (pi / 2.0) * x * std::exp(-pi * x * x / 4.0) : 0.0;
        case K::WignerGUE:
            return x >= 0.0 ? (32.0 / (pi * pi)) * x * x * std::exp(-4.0 * x * x / pi) : 0.0;
        case K::PoissonSpacing:
            return x >= 0.0 ? std::exp(-x) : 0.0;
        case K::Weibull: {
            check_weibull(ref);
            if (x < 0.0) return 0.0;
            const double u = x / ref.scale;
            return (ref.shape / ref.scale) * std::pow(u, ref.shape - 1.0) * std::exp(-std::pow(u, ref.shape));
        }
        case K::PoissonCount:
            if (x < 0.0) return 0.0;
            if (ref.points == 0) return std::exp(-x);
            if (x == 0.0) return 0.0;
            return std::exp(ref.points * std::log(x) - x - std::lgamma(ref.points + 1.0));
        case K::MontgomeryPairCorrelation: {
            const double s = sinc(pi * x);
            return 1.0 - s * s;
        }
    }
    return 0.0;
}

double cdf_eval(const ReferenceDensity& ref, double x) {
    using K = ReferenceDensity::Kind;
    switch (ref.kind) {
        case K::Semicircle:
            if (x <= -1.0) return 0.0;
            if (x >= 1.0) return 1.0;
            return 0.5 + (x * std::sqrt(1.0 - x * x) + std::asin(x)) / pi;
        case K::WignerGOE:
            return x > 0.0 ? -std::expm1(-pi * x * x / 4.0) : 0.0;
        case K::WignerGUE: {
            if (x <= 0.0) return 0.0;
            const double a = 4.0 / pi;
            return (32.0 / (pi * pi)) *
                   (std::sqrt(pi) * std::erf(std::sqrt(a) * x) / (4.0 * a * std::sqrt(a)) -
                    x * std::exp(-a * x * x) / (2.0 * a));
        }
        case K::PoissonSpacing:
            return x > 0.0 ? -std::expm1(-x) : 0.0;
        case K::Weibull:
            check_weibull(ref);
            return x > 0.0 ? -std::expm1(-std::pow(x / ref.scale, ref.shape)) : 0.0;
        case K::PoissonCount: {
            // Gamma(j+1, 1) law: 1 - e^{-x} sum_{i<=j} x^i / i!
            if (x <= 0.0) return 0.0;
            double term = 1.0;
            double sum = 1.0;
            for (unsigned i = 1; i <= ref.points; ++i) {
                term *= x / i;
                sum += term;
            }
            return 1.0 - std::exp(-x) * sum;
        }
        case K::MontgomeryPairCorrelation:
            throw std::invalid_argument("the pair-correlation kernel has no cumulative distribution");
    }
    return 0.0;
}

WeibullStats weibull_stats(double k, double lambda) {
    if (!(k > 0.0) || !(lambda > 0.0)) {
        throw std::invalid_argument("Weibull parameters must satisfy k > 0 and lambda > 0");
    }
    WeibullStats s{};
    s.mean = lambda * std::tgamma(1.0 + 1.0 / k);
    s.median = lambda * std::pow(std::log(2.0), 1.0 / k);
    s.mode = k > 1.0 ? lambda * std::pow((k - 1.0) / k, 1.0 / k) : 0.0;
    return s;
}

double semicircle_moment(unsigned k) {
    if (k % 2 == 1) {
        return 0.0;
    }
    // C_m / 4^m through C_{i+1} = C_i * 2(2i+1)/(i+2).
    const unsigned m = k / 2;
    double value = 1.0;
    for (unsigned i = 0; i < m; ++i) {
        value *= 2.0 * (2.0 * i + 1.0) / ((i + 2.0) * 4.0);
    }
    return value;
}

}  // namespace spectra
