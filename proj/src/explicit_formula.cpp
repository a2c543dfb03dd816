#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spectra/dirichlet.hpp"
#include "spectra/numerics.hpp"
#include "spectra/zeta.hpp"

namespace spectra {

using std::numbers::pi;

namespace {

constexpr double kArchimedeanHeight = 2e4;
constexpr double kPanelLength = 1.0;

double archimedean_kernel(double y) {
    const std::complex<double> iy(0.0, y);
    const std::complex<double> pole = 1.0 / (iy - 0.5);
    const std::complex<double> psi = digamma(iy / 2.0 + 1.25);
    return pole.real() + 0.5 * psi.real() - 0.5 * std::log(pi);
}

// (2/pi) integral_0^inf kernel(y) phi(y) dy; the range past Y uses the mean
// of sin^2 and the large-y form of the kernel, log(y / 2pi) / 2.
Quadrature archimedean(const TestFunction& tf) {
    const double u = tf.u_max();
    const double a = tf.amplitude();
    const double node = 2.0 * pi / u;
    const double height = node * std::ceil(kArchimedeanHeight / node);
    const auto f = [&](double y) { return archimedean_kernel(y) * tf.phi(y); };

    const auto per_node = static_cast<int>(std::ceil(node / kPanelLength));
    const double step = node / per_node;
    const auto panels = static_cast<long>(std::llround(height / step));
    Quadrature sum;
    for (long k = 0; k < panels; ++k) {
        const Quadrature q = integrate(f, k * step, (k + 1) * step, 1e-14, 1e-12);
        sum.value += q.value;
        sum.error += q.error;
    }
    const double tail_scale = a / (pi * pi * u);
    const double tail = tail_scale * (std::log(height / (2.0 * pi)) + 1.0) / height;
    const double oscillation = 4.0 * tail_scale * (std::log(height / (2.0 * pi)) + 1.0) / (u * height * height);
    sum.value = 2.0 / pi * sum.value + tail;
    sum.error = 2.0 / pi * sum.error + oscillation + 1e-3 * tail;
    return sum;
}

}  // namespace

double explicit_formula_tail_bound(double height, double u_max, double amplitude) {
    if (!(height > 1.0) || !(u_max > 0.0)) {
        throw std::invalid_argument("explicit_formula_tail_bound: need height > 1 and u_max > 0");
    }
    const double t = height;
    const double peak = 2.0 * std::abs(amplitude) / (pi * u_max);
    const double density = 2.0;
    return 2.0 * density * peak * (std::log(t + 1.0) / (t * t) + (std::log(t) + 1.0) / t + 0.5 / (t * t));
}

ExplicitFormulaResult explicit_formula_check(const ZeroTable& table, const TestFunction& tf_in, double p_max,
                                             double tolerance) {
    const TestFunction tf = tf_in.to_plain_exp();
    const double u = tf.u_max();
    if (table.ordinates.empty()) {
        throw std::invalid_argument("explicit_formula_check: empty zero table");
    }
    if (!(tolerance > 0.0)) {
        throw std::invalid_argument("explicit_formula_check: tolerance must be positive");
    }
    const double needed_p = std::ceil(std::exp(u));
    if (p_max == 0.0) {
        p_max = needed_p;
    }
    if (!(p_max >= std::exp(u)) || p_max > 4e9) {
        std::ostringstream msg;
        msg << "explicit_formula_check: p_max must lie in [e^u_max, 4e9], need at least " << needed_p;
        throw std::invalid_argument(msg.str());
    }

    ExplicitFormulaResult r;
    r.u_max = u;
    r.p_max = p_max;
    const double complete = std::max(table.complete_to, table.ordinates.back());
    r.truncation_estimate = explicit_formula_tail_bound(complete, u, tf.amplitude());
    if (r.truncation_estimate > tolerance) {
        double lo = complete;
        double hi = complete;
        while (explicit_formula_tail_bound(hi, u, tf.amplitude()) > tolerance) {
            lo = hi;
            hi *= 2.0;
        }
        for (int i = 0; i < 60 && hi - lo > 1e-6 * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            (explicit_formula_tail_bound(mid, u, tf.amplitude()) > tolerance ? lo : hi) = mid;
        }
        std::ostringstream msg;
        msg << "explicit_formula_check: zeros up to " << complete << " leave a tail bound of "
            << r.truncation_estimate << " > " << tolerance << "; a table complete to " << std::ceil(hi)
            << " is required";
        throw InsufficientZerosError(msg.str(), std::ceil(hi));
    }

    double lhs = 0.0;
    for (std::size_t j = table.ordinates.size(); j-- > 0;) {
        lhs += tf.phi(table.ordinates[j]);
    }
    r.lhs = 2.0 * lhs;
    r.zeros_used = table.ordinates.size();

    // phi(i/2) = 2 integral_0^u g(v) cosh(v/2) dv
    r.phi_half_i = 2.0 * integrate([&](double v) { return tf.g(v) * std::cosh(0.5 * v); }, 0.0, u, 1e-14, 1e-14).value;

    const auto limit = static_cast<std::uint64_t>(std::floor(p_max));
    const PrimeTable primes = sieve(std::max<std::uint64_t>(limit, 2));
    double prime_term = 0.0;
    for (std::uint64_t n = 2; n <= primes.limit; ++n) {
        const double lam = primes.lambda[n];
        const double logn = std::log(static_cast<double>(n));
        if (lam == 0.0 || logn >= u) {
            continue;
        }
        prime_term += 2.0 * lam / std::sqrt(static_cast<double>(n)) * tf.g(logn);
        ++r.prime_powers_used;
    }
    r.prime_term = prime_term;

    const Quadrature arch = archimedean(tf);
    r.archimedean_term = arch.value;
    r.quadrature_error = arch.error;

    r.rhs = 2.0 * r.phi_half_i - r.prime_term + r.archimedean_term;
    r.abs_diff = std::abs(r.lhs - r.rhs);
    return r;
}

}  // namespace spectra
