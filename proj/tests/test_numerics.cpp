#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "spectra/numerics.hpp"
#include "spectra/test_function.hpp"

using namespace spectra;
using std::numbers::pi;

namespace {

// Euler's constant from H_n - log n with the first two Euler-Maclaurin corrections.
double euler_gamma_oracle() {
    const int n = 1000000;
    double h = 0.0;
    for (int k = n; k >= 1; --k) h += 1.0 / k;
    const double x = n;
    return h - std::log(x) - 1.0 / (2.0 * x) + 1.0 / (12.0 * x * x);
}

// integral of an even f over [-cut, cut] in unit panels.
double even_integral(const std::function<double(double)>& f, double cut) {
    double sum = 0.0;
    for (double a = 0.0; a < cut; a += 1.0) sum += integrate(f, a, a + 1.0, 1e-15, 1e-13).value;
    return 2.0 * sum;
}

}  // namespace

TEST(Integrate, PolynomialsAndSmoothFunctions) {
    EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 3.0).value, 9.0, 1e-13);
    EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, -1.0, 2.0).value, std::exp(2.0) - std::exp(-1.0), 1e-13);
    EXPECT_NEAR(integrate([](double x) { return 1.0 / (1.0 + x * x); }, -50.0, 50.0).value, 2.0 * std::atan(50.0), 1e-12);
    const auto q = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0);
    EXPECT_NEAR(q.value, 2.0 / 3.0, 1e-11);
    EXPECT_GE(q.error, 0.0);
    EXPECT_EQ(integrate([](double) { return 1.0; }, 2.0, 2.0).value, 0.0);
    EXPECT_NEAR(integrate([](double x) { return x; }, 1.0, 0.0).value, -0.5, 1e-15);
}

TEST(Digamma, EulerConstantValues) {
    const double g = euler_gamma_oracle();
    EXPECT_NEAR(g, 0.57721566490153286, 1e-12);
    EXPECT_NEAR(digamma({1.0, 0.0}).real(), -g, 1e-10);
    EXPECT_NEAR(digamma({2.0, 0.0}).real(), 1.0 - g, 1e-10);
}

TEST(Digamma, RealAxisMatchesBoost) {
    for (double x : {0.1, 0.25, 0.5, 1.25, 3.7, 9.0, 40.0, 1000.0}) {
        EXPECT_NEAR(digamma({x, 0.0}).real(), boost::math::digamma(x), 1e-12 * std::max(1.0, std::abs(boost::math::digamma(x))));
    }
    for (double x : {-0.5, -1.5, -2.25}) {
        EXPECT_NEAR(digamma({x, 0.0}).real(), boost::math::digamma(x), 1e-10);
    }
    EXPECT_THROW(digamma({0.0, 0.0}), std::domain_error);
    EXPECT_THROW(digamma({-3.0, 0.0}), std::domain_error);
}

TEST(Digamma, ComplexRecurrenceAndReflection) {
    for (auto z : {std::complex<double>(0.25, 3.0), std::complex<double>(1.25, 40.0), std::complex<double>(0.3, -0.7)}) {
        const auto lhs = digamma(z + 1.0) - digamma(z);
        EXPECT_NEAR(std::abs(lhs - 1.0 / z), 0.0, 1e-12);
        // psi(1 - z) - psi(z) = pi cot(pi z)
        const auto refl = digamma(1.0 - z) - digamma(z);
        const auto cot = std::cos(pi * z) / std::sin(pi * z);
        EXPECT_NEAR(std::abs(refl - pi * cot), 0.0, 1e-10);
        EXPECT_NEAR(std::abs(digamma(std::conj(z)) - std::conj(digamma(z))), 0.0, 1e-14);
    }
    // Im psi(1/2 + iy) = (pi/2) tanh(pi y)
    for (double y : {0.3, 2.0, 15.0}) {
        EXPECT_NEAR(digamma({0.5, y}).imag(), 0.5 * pi * std::tanh(pi * y), 1e-12);
    }
}

TEST(Digamma, IsDerivativeOfLogGamma) {
    for (auto z : {std::complex<double>(0.25, 5.0), std::complex<double>(3.0, 0.5), std::complex<double>(1.25, 123.0)}) {
        const double h = 1e-5;
        const auto d = (log_gamma(z + h) - log_gamma(z - h)) / (2.0 * h);
        EXPECT_NEAR(std::abs(d - digamma(z)), 0.0, 1e-8);
    }
}

TEST(LogGamma, RealAxisMatchesBoost) {
    for (double x : {0.1, 0.5, 1.0, 2.5, 7.0, 33.3, 500.0}) {
        EXPECT_NEAR(log_gamma({x, 0.0}).real(), boost::math::lgamma(x), 1e-12 * std::max(1.0, std::abs(boost::math::lgamma(x))));
        EXPECT_EQ(log_gamma({x, 0.0}).imag(), 0.0);
    }
}

TEST(LogGamma, ComplexIdentities) {
    // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
    for (double y : {0.5, 3.0, 20.0}) {
        EXPECT_NEAR(2.0 * log_gamma({0.5, y}).real(), std::log(pi / std::cosh(pi * y)), 1e-11);
    }
    // log Gamma(z + 1) = log Gamma(z) + log z, with the branch continued along the path.
    for (auto z : {std::complex<double>(0.25, 7.0), std::complex<double>(2.0, -3.0)}) {
        const auto diff = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
        EXPECT_NEAR(std::abs(diff), 0.0, 1e-12);
    }
    EXPECT_THROW(log_gamma({-1.0, 1.0}), std::domain_error);
}

TEST(Fejer, PointValuesAndSupport) {
    const auto tf = TestFunction::fejer_two_pi(1.5);
    EXPECT_EQ(tf.phi_hat(0.0), 1.0);
    EXPECT_EQ(tf.phi_hat(1.5), 0.0);
    EXPECT_EQ(tf.phi_hat(-1.5), 0.0);
    EXPECT_EQ(tf.phi_hat(4.0), 0.0);
    EXPECT_EQ(tf.phi(0.0), 1.5);
    EXPECT_EQ(fejer_phi(0.0, 0.7), 0.7);
    EXPECT_EQ(fejer_phi_hat(0.35, 0.7), 0.5);
    EXPECT_EQ(tf.integral_phi(), 1.0);
    EXPECT_THROW(TestFunction::fejer_two_pi(0.0), std::invalid_argument);
    EXPECT_THROW(TestFunction::fejer_plain(-1.0), std::invalid_argument);
    EXPECT_THROW(fejer_phi(1.0, 0.0), std::invalid_argument);
}

TEST(Fejer, IntegralAndFourierPairByQuadrature) {
    const double sigma = 1.3;
    const double cut = 2e4;
    // Beyond the cut the integrand averages to 1/(2 pi^2 sigma x^2) per side.
    const double tail = 2.0 / (2.0 * pi * pi * sigma * cut);
    const double total = even_integral([&](double x) { return fejer_phi(x, sigma); }, cut) + tail;
    EXPECT_NEAR(total, 1.0, 1e-8);
    for (double xi : {0.0, sigma / 2.0, 0.99 * sigma}) {
        const double ft =
            even_integral([&](double x) { return fejer_phi(x, sigma) * std::cos(2.0 * pi * x * xi); }, cut);
        const double expected_tail = xi == 0.0 ? tail : 0.0;
        EXPECT_NEAR(ft + expected_tail, fejer_phi_hat(xi, sigma), 1e-6) << xi;
    }
}

TEST(Fejer, PlainExpPairByQuadrature) {
    const auto tf = TestFunction::fejer_plain(2.0);
    for (double r : {0.0, 0.7, 3.0, 11.0}) {
        const double ft = 2.0 * integrate([&](double u) { return tf.g(u) * std::cos(r * u); }, 0.0, 2.0, 1e-15, 1e-14).value;
        EXPECT_NEAR(ft, tf.phi(r), 1e-13) << r;
    }
}

TEST(Fejer, ConventionRoundTrip) {
    const auto two_pi = TestFunction::fejer_two_pi(0.8, 1.7);
    const auto plain = two_pi.to_plain_exp();
    EXPECT_EQ(plain.convention(), FourierConvention::PlainExp);
    EXPECT_NEAR(plain.u_max(), 2.0 * pi * 0.8, 1e-15);
    const auto back = plain.to_two_pi();
    EXPECT_NEAR(back.sigma(), 0.8, 1e-15);
    for (int i = -50; i <= 50; ++i) {
        const double x = 0.13 * i;
        EXPECT_NEAR(plain.phi(x), two_pi.phi(x), 1e-12);
        EXPECT_NEAR(back.phi(x), two_pi.phi(x), 1e-12);
        EXPECT_NEAR(back.phi_hat(x), two_pi.phi_hat(x), 1e-12);
        // g(u) = phi_hat(u / 2pi) / 2pi
        EXPECT_NEAR(plain.g(x), two_pi.phi_hat(x / (2.0 * pi)) / (2.0 * pi), 1e-12);
    }
}
