#include "spectra/numerics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spectra {

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (7-point rule).
constexpr std::array<double, 4> kGaussWeights = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                                 0.381830050505118944950369775488975,
                                                 0.417959183673469387755102040816327};

Quadrature gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[i] * pair;
        if (i % 2 == 1) {
            gauss += kGaussWeights[i / 2] * pair;
        }
    }
    return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

Quadrature adapt(const std::function<double(double)>& f, double a, double b, const Quadrature& whole, double tol,
                 double rel_tol, int depth) {
    if (whole.error <= std::max(tol, rel_tol * std::abs(whole.value)) || depth <= 0) {
        return whole;
    }
    const double mid = 0.5 * (a + b);
    const Quadrature left = gk15(f, a, mid);
    const Quadrature right = gk15(f, mid, b);
    const Quadrature l = adapt(f, a, mid, left, 0.5 * tol, rel_tol, depth - 1);
    const Quadrature r = adapt(f, mid, b, right, 0.5 * tol, rel_tol, depth - 1);
    return {l.value + r.value, l.error + r.error};
}

}  // namespace

Quadrature integrate(const std::function<double(double)>& f, double a, double b, double abs_tol, double rel_tol,
                     int max_depth) {
    if (a == b) {
        return {};
    }
    if (b < a) {
        const Quadrature q = integrate(f, b, a, abs_tol, rel_tol, max_depth);
        return {-q.value, q.error};
    }
    return adapt(f, a, b, gk15(f, a, b), abs_tol, rel_tol, max_depth);
}

std::complex<double> digamma(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        throw std::domain_error("digamma: pole at a non-positive integer");
    }
    std::complex<double> shift = 0.0;
    while (z.real() <= 8.0) {
        shift -= 1.0 / z;
        z += 1.0;
    }
    const std::complex<double> inv2 = 1.0 / (z * z);
    // B_2k / (2k) for k = 1..6
    const std::complex<double> series =
        inv2 * (1.0 / 12.0 -
                inv2 * (1.0 / 120.0 -
                        inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0))))));
    return shift + std::log(z) - 0.5 / z - series;
}

std::complex<double> log_gamma(std::complex<double> z) {
    if (z.real() <= 0.0) {
        throw std::domain_error("log_gamma: requires Re z > 0");
    }
    std::complex<double> shift = 0.0;
    while (z.real() < 10.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    const std::complex<double> inv = 1.0 / z;
    const std::complex<double> inv2 = inv * inv;
    // B_2k / (2k (2k-1) z^(2k-1)) for k = 1..6
    const std::complex<double> series =
        inv * (1.0 / 12.0 -
               inv2 * (1.0 / 360.0 -
                       inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 * (1.0 / 1188.0 - inv2 * (691.0 / 360360.0))))));
    return shift + (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

}  // namespace spectra
