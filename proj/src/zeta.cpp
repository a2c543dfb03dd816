#include "spectra/zeta.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "spectra/numerics.hpp"

namespace spectra {

using std::numbers::pi;

ZeroTable parse_zeros(std::istream& in) {
    ZeroTable table;
    table.source = ZeroSource::File;
    std::string line;
    std::size_t line_no = 0;
    double declared_complete = 0.0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        if (line[first] == '#') {
            const auto key = line.find("complete_to=", first);
            if (key != std::string::npos) {
                const char* begin = line.data() + key + 12;
                const auto [ptr, ec] = std::from_chars(begin, line.data() + line.size(), declared_complete);
                if (ec != std::errc() || !(declared_complete > 0.0)) {
                    throw ZeroTableParseError("line " + std::to_string(line_no) + ": bad complete_to value", line_no);
                }
            }
            continue;
        }
        const auto last = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(first, last - first + 1);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
            throw ZeroTableParseError("line " + std::to_string(line_no) + ": not a number: '" + token + "'", line_no);
        }
        if (!(value > 0.0)) {
            throw ZeroTableParseError("line " + std::to_string(line_no) + ": ordinate must be positive", line_no);
        }
        if (!table.ordinates.empty() && !(value > table.ordinates.back())) {
            throw ZeroTableParseError("line " + std::to_string(line_no) + ": ordinates must be strictly ascending",
                                      line_no);
        }
        table.ordinates.push_back(value);
    }
    if (table.ordinates.empty()) {
        throw ZeroTableParseError("zero table is empty", 0);
    }
    table.complete_to = std::max(table.ordinates.back(), declared_complete);
    return table;
}

ZeroTable load_zeros(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open zero table '" + path.string() + "'");
    }
    return parse_zeros(in);
}

void write_zeros(std::ostream& out, const ZeroTable& table, const std::vector<std::string>& header) {
    for (const auto& h : header) {
        out << "# " << h << '\n';
    }
    char buf[48];
    for (double g : table.ordinates) {
        std::snprintf(buf, sizeof buf, "%.12f", g);
        out << buf << '\n';
    }
}

double riemann_siegel_theta(double t) {
    if (t < 0.0) {
        return -riemann_siegel_theta(-t);
    }
    if (t < 10.0) {
        return log_gamma({0.25, 0.5 * t}).imag() - 0.5 * t * std::log(pi);
    }
    const double inv = 1.0 / t;
    const double inv2 = inv * inv;
    return 0.5 * t * std::log(t / (2.0 * pi)) - 0.5 * t - pi / 8.0 +
           inv * (1.0 / 48.0 + inv2 * (7.0 / 5760.0 + inv2 * (31.0 / 80640.0)));
}

double smooth_zero_count(double t) { return riemann_siegel_theta(t) / pi + 1.0; }

namespace {

constexpr std::size_t kMaxBernoulli = 90;

// B_{2k} / (2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}
const std::vector<double>& bernoulli_over_factorial() {
    static const std::vector<double> table = [] {
        std::vector<double> b(kMaxBernoulli + 1, 0.0);
        for (std::size_t k = 1; k <= kMaxBernoulli; ++k) {
            double z;
            if (k == 1) {
                z = pi * pi / 6.0;
            } else if (k == 2) {
                z = pi * pi * pi * pi / 90.0;
            } else {
                const double e = 2.0 * static_cast<double>(k);
                z = 0.0;
                for (int n = 200; n >= 1; --n) {
                    z += std::pow(static_cast<double>(n), -e);
                }
                z += std::pow(200.5, 1.0 - e) / (e - 1.0);  // midpoint tail estimate, negligible
            }
            const double sign = (k % 2 == 1) ? 1.0 : -1.0;
            b[k] = sign * 2.0 * z * std::exp(-2.0 * static_cast<double>(k) * std::log(2.0 * pi));
        }
        return b;
    }();
    return table;
}

struct LogTable {
    std::vector<double> log_n;
    std::vector<double> inv_sqrt_n;
};

const LogTable& log_table() {
    static const LogTable table = [] {
        constexpr std::size_t size = 4096;
        LogTable t{std::vector<double>(size), std::vector<double>(size)};
        for (std::size_t n = 1; n < size; ++n) {
            t.log_n[n] = std::log(static_cast<double>(n));
            t.inv_sqrt_n[n] = 1.0 / std::sqrt(static_cast<double>(n));
        }
        return t;
    }();
    return table;
}

}  // namespace

std::complex<double> zeta_critical(double t) {
    const std::complex<double> s(0.5, t);
    const auto N = static_cast<std::size_t>(20 + std::ceil(0.25 * std::abs(t)));
    const LogTable& logs = log_table();

    double re = 0.0;
    double im = 0.0;
    for (std::size_t n = 1; n < N; ++n) {
        double ln, w;
        if (n < logs.log_n.size()) {
            ln = logs.log_n[n];
            w = logs.inv_sqrt_n[n];
        } else {
            ln = std::log(static_cast<double>(n));
            w = 1.0 / std::sqrt(static_cast<double>(n));
        }
        const double phase = t * ln;
        re += w * std::cos(phase);
        im -= w * std::sin(phase);
    }
    std::complex<double> sum(re, im);

    const double dn = static_cast<double>(N);
    const std::complex<double> n_pow = std::exp(-s * std::log(dn));  // N^{-s}
    sum += dn * n_pow / (s - 1.0) + 0.5 * n_pow;

    const auto& bern = bernoulli_over_factorial();
    std::complex<double> poch = s;  // s (s+1) ... (s+2k-2)
    std::complex<double> power = n_pow / dn;  // N^{-s-2k+1}
    const double inv_n2 = 1.0 / (dn * dn);
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= kMaxBernoulli; ++k) {
        const std::complex<double> term = bern[k] * poch * power;
        const double mag = std::abs(term);
        if (mag > previous) {
            break;  // asymptotic series started to diverge; stop at the smallest term
        }
        sum += term;
        if (mag < 1e-17 * std::max(1.0, std::abs(sum))) {
            break;
        }
        previous = mag;
        const double k2 = 2.0 * static_cast<double>(k);
        poch *= (s + (k2 - 1.0)) * (s + k2);
        power *= inv_n2;
    }
    return sum;
}

double hardy_z(double t) {
    const double theta = riemann_siegel_theta(t);
    const std::complex<double> z = zeta_critical(t);
    return std::cos(theta) * z.real() - std::sin(theta) * z.imag();
}

double unfolding_threshold() noexcept { return 2.0 * pi * std::numbers::e; }

std::vector<double> unfold(const ZeroTable& table) {
    std::vector<double> out;
    out.reserve(table.ordinates.size());
    const double cut = unfolding_threshold();
    for (double g : table.ordinates) {
        if (g > cut) {
            const double x = g / (2.0 * pi);
            out.push_back(x * (std::log(x) - 1.0) + 7.0 / 8.0);
        }
    }
    return out;
}

Histogram zeta_spacing_histogram(const ZeroTable& table, std::vector<double> edges) {
    const auto unfolded = unfold(table);
    Histogram h(std::move(edges), Normalization::Density);
    for (std::size_t i = 1; i < unfolded.size(); ++i) {
        h.add(unfolded[i] - unfolded[i - 1]);
    }
    return h;
}

PairCorrelation zeta_pair_correlation(const ZeroTable& table, std::size_t bins, double cutoff) {
    const auto unfolded = unfold(table);
    if (!(cutoff > 0.0) || bins == 0) {
        return PairCorrelation{Histogram(std::vector<double>{0.0}, Normalization::Counts), unfolded.size()};
    }
    std::vector<double> edges(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) {
        edges[b] = cutoff * static_cast<double>(b) / static_cast<double>(bins);
    }
    edges.back() = cutoff;
    if (unfolded.size() < 2) {
        return PairCorrelation{Histogram(std::move(edges), Normalization::Counts), unfolded.size()};
    }
    return pair_correlation(unfolded, std::move(edges));
}

double chebyshev_psi(double x) {
    if (x < 2.0) {
        return 0.0;
    }
    const PrimeTable primes = sieve(static_cast<std::uint64_t>(std::floor(x)));
    double sum = 0.0;
    for (std::uint64_t n = 2; n <= primes.limit; ++n) {
        sum += primes.lambda[n];
    }
    return sum;
}

ChebyshevCheck chebyshev_check(double x, const ZeroTable& table, std::size_t zero_count) {
    if (!(x >= 2.0) || x == std::floor(x)) {
        throw std::invalid_argument("chebyshev_check: x must be >= 2 and non-integral");
    }
    ChebyshevCheck r;
    r.x = x;
    r.psi = chebyshev_psi(x);
    const std::size_t used = std::min(zero_count, table.ordinates.size());
    const double logx = std::log(x);
    const double sqrtx = std::sqrt(x);
    double correction = 0.0;
    for (std::size_t j = used; j-- > 0;) {
        const double g = table.ordinates[j];
        const std::complex<double> rho(0.5, g);
        const std::complex<double> xrho = sqrtx * std::polar(1.0, g * logx);
        correction += 2.0 * (xrho / rho).real();
    }
    r.zero_correction = correction;
    r.zeros_used = used;
    r.residual = r.psi - x + correction + std::log(2.0 * pi) + 0.5 * std::log(1.0 - 1.0 / (x * x));
    return r;
}

}  // namespace spectra
