#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "spectra/dirichlet.hpp"
#include "spectra/histogram.hpp"
#include "spectra/spectral_stats.hpp"
#include "spectra/test_function.hpp"

namespace spectra {

enum class ZeroSource { File, Computed };

/// Ascending positive ordinates gamma of zeros 1/2 + i gamma of zeta(s).
struct ZeroTable {
    std::vector<double> ordinates;
    ZeroSource source = ZeroSource::File;
    /// Absolute error bound per ordinate.
    double precision_hint = 0.0;
    /// The table is taken to hold every zero with 0 < gamma <= complete_to.
    double complete_to = 0.0;
};

/// Raised for malformed zero-table files; carries the 1-based line number (0 if none).
class ZeroTableParseError : public std::runtime_error {
public:
    ZeroTableParseError(const std::string& what, std::size_t line) : std::runtime_error(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Reads one decimal ordinate per line; blank lines and lines starting with
/// '#' are skipped. Values must be positive and strictly ascending. A comment
/// containing `complete_to=<T>` declares the table complete up to T; otherwise
/// complete_to is the last ordinate.
ZeroTable load_zeros(const std::filesystem::path& path);
ZeroTable parse_zeros(std::istream& in);
/// Writes the table in the load_zeros format, preceded by `#` header lines.
void write_zeros(std::ostream& out, const ZeroTable& table, const std::vector<std::string>& header = {});

/// Riemann-Siegel theta: arg Gamma(1/4 + it/2) - (t/2) log pi. Uses log Gamma
/// below t = 10 and the asymptotic series with three correction terms above.
double riemann_siegel_theta(double t);

/// zeta(1/2 + it) by Euler-Maclaurin summation.
std::complex<double> zeta_critical(double t);

/// Hardy's Z(t) = exp(i theta(t)) zeta(1/2 + it), real for real t.
double hardy_z(double t);

/// Smooth zero count theta(T)/pi + 1.
double smooth_zero_count(double t);

/// Outcome of the zero-count audit. For consecutive windows [a, a+L] the mean of
/// S(t) = N_found(t) - theta(t)/pi - 1 is computed exactly from the found zeros.
/// The true S has |integral S| <= 2.30 + 0.128 log(b/2pi) over any window, so
/// with L = 20 its mean stays well below 1, whereas a missed pair of zeros
/// shifts every later window mean by -2.
struct ZeroAudit {
    bool passed = false;
    std::size_t windows = 0;
    double window_length = 0.0;
    double max_abs_mean_s = 0.0;
    /// theta(t_max)/pi + 1 and the number of zeros found up to t_max.
    double smooth_count = 0.0;
    std::size_t count = 0;
    std::size_t rescans = 0;
};

class ZeroAuditError : public std::runtime_error {
public:
    ZeroAuditError(const std::string& what, double lo, double hi) : std::runtime_error(what), lo_(lo), hi_(hi) {}
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

struct ZeroSearchOptions {
    /// Scan points per mean zero spacing.
    double oversample = 8.0;
    double audit_window = 20.0;
    /// Attempts to rescan a failing audit region more finely before giving up.
    int max_rescans = 4;
};

struct ZeroComputation {
    ZeroTable table;
    ZeroAudit audit;
};

/// All zeros with 0 < gamma <= t_max (0 < t_max <= 1e4), located as sign
/// changes of Z(t) and refined to ~1e-10. The scan runs in parallel over
/// fixed blocks. Throws ZeroAuditError if the count audit cannot be satisfied.
ZeroComputation compute_zeros(double t_max, ZeroSearchOptions options = {});

/// Runs the window audit on an existing table over the full windows inside
/// [10, complete_to]. `passed` is false when some window mean reaches 1.
ZeroAudit audit_zero_table(const ZeroTable& table, double window = 20.0);

namespace reference {
ZeroComputation compute_zeros(double t_max, ZeroSearchOptions options = {});
}  // namespace reference

/// Cutoff below which ordinates are dropped from unfolded statistics.
double unfolding_threshold() noexcept;

/// N~(gamma) = (gamma/2pi) log(gamma/(2pi e)) + 7/8 for every gamma > 2pi e;
/// consecutive differences have mean close to 1.
std::vector<double> unfold(const ZeroTable& table);

/// Density histogram of consecutive unfolded differences.
Histogram zeta_spacing_histogram(const ZeroTable& table, std::vector<double> edges);

/// Pair correlation of the unfolded ordinates on `bins` equal bins over (0, cutoff].
/// cutoff = 0 gives an empty histogram.
PairCorrelation zeta_pair_correlation(const ZeroTable& table, std::size_t bins, double cutoff);

/// Both sides of the explicit formula for a PlainExp Fejer pair (g, phi):
///   lhs = sum over zeros phi(gamma) = 2 sum_{gamma > 0} phi(gamma)
///   rhs = 2 phi(i/2) - sum_{p,k} 2 log p / p^{k/2} g(k log p)
///         + (1/pi) integral (Re[1/(iy - 1/2) + psi(iy/2 + 5/4)/2] - log(pi)/2) phi(y) dy
struct ExplicitFormulaResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_diff = 0.0;
    /// Bound on the zeros missing above the table (the lhs tail).
    double truncation_estimate = 0.0;
    double u_max = 0.0;
    double p_max = 0.0;
    std::size_t zeros_used = 0;

    double phi_half_i = 0.0;        // phi(i/2)
    double prime_term = 0.0;        // sum_{p,k} 2 log p / p^{k/2} g(k log p)
    double archimedean_term = 0.0;  // the integral term
    double quadrature_error = 0.0;
    std::size_t prime_powers_used = 0;
};

class InsufficientZerosError : public std::runtime_error {
public:
    InsufficientZerosError(const std::string& what, double required) : std::runtime_error(what), required_(required) {}
    /// Height the table must be complete to for the requested tolerance.
    double required_height() const noexcept { return required_; }

private:
    double required_;
};

/// Upper bound on 2 sum_{gamma > T} |phi(gamma)| for the Fejer pair with support
/// u_max, from |phi(gamma)| <= 2/(pi u_max gamma^2) and at most 2 log t zeros
/// per unit interval.
double explicit_formula_tail_bound(double height, double u_max, double amplitude = 1.0);

/// `tf` is converted to the PlainExp convention. p_max must be >= e^{u_max}
/// (0 selects ceil(e^{u_max})). Throws InsufficientZerosError if the tail bound
/// at table.complete_to exceeds `tolerance`.
ExplicitFormulaResult explicit_formula_check(const ZeroTable& table, const TestFunction& tf, double p_max = 0.0,
                                             double tolerance = 1e-2);

/// psi(x) = sum_{n <= x} Lambda(n) against the explicit-formula prediction.
struct ChebyshevCheck {
    double psi = 0.0;
    double x = 0.0;
    /// 2 sum_{gamma <= Gamma} Re(x^rho / rho) over the supplied zeros.
    double zero_correction = 0.0;
    /// psi - x + zero_correction + log(2 pi) + log(1 - x^-2)/2.
    double residual = 0.0;
    std::size_t zeros_used = 0;
};

/// x >= 2 and non-integral. Uses the first `zero_count` ordinates of `table`
/// (all when zero_count exceeds the table).
ChebyshevCheck chebyshev_check(double x, const ZeroTable& table, std::size_t zero_count);

/// sum_{n <= x} Lambda(n) from a sieve.
double chebyshev_psi(double x);

}  // namespace spectra
