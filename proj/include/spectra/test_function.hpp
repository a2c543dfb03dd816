#pragma once

namespace spectra {

/// Which Fourier pair the support parameter refers to.
///  - TwoPi:    phi_hat(xi) = integral phi(x) e^{-2 pi i x xi} dx, phi_hat supported in [-sigma, sigma].
///  - PlainExp: phi(r) = integral g(u) e^{i r u} du, g supported in [-u_max, u_max].
/// The two describe the same phi when u_max = 2 pi sigma and g(u) = phi_hat(u / 2pi) / 2pi.
enum class FourierConvention { TwoPi, PlainExp };

/// Even, nonnegative Fejer test function:
///   phi_hat(xi) = A max(0, 1 - |xi|/sigma),  phi(x) = A sigma (sin(pi sigma x) / (pi sigma x))^2,
///   g(u) = (A / 2pi) max(0, 1 - |u|/u_max).
/// A is an amplitude (1 unless a scaled or zero function is wanted).
class TestFunction {
public:
    static TestFunction fejer(FourierConvention convention, double support, double amplitude = 1.0);
    static TestFunction fejer_two_pi(double sigma, double amplitude = 1.0) {
        return fejer(FourierConvention::TwoPi, sigma, amplitude);
    }
    static TestFunction fejer_plain(double u_max, double amplitude = 1.0) {
        return fejer(FourierConvention::PlainExp, u_max, amplitude);
    }

    FourierConvention convention() const noexcept { return convention_; }
    /// sigma for TwoPi, u_max for PlainExp.
    double support() const noexcept { return support_; }
    double amplitude() const noexcept { return amplitude_; }
    double sigma() const noexcept;
    double u_max() const noexcept;

    TestFunction to_two_pi() const;
    TestFunction to_plain_exp() const;

    double phi(double x) const noexcept;
    double phi_hat(double xi) const noexcept;
    double g(double u) const noexcept;
    /// integral of phi over the real line, = phi_hat(0).
    double integral_phi() const noexcept { return amplitude_; }

private:
    TestFunction(FourierConvention c, double support, double amplitude)
        : convention_(c), support_(support), amplitude_(amplitude) {}

    FourierConvention convention_;
    double support_;
    double amplitude_;
};

/// sigma (sin(pi sigma x) / (pi sigma x))^2, with phi(0) = sigma.
double fejer_phi(double x, double sigma);
/// max(0, 1 - |xi| / sigma).
double fejer_phi_hat(double xi, double sigma);

}  // namespace spectra
