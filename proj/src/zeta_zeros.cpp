#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "spectra/numerics.hpp"
#include "spectra/parallel.hpp"
#include "spectra/zeta.hpp"

namespace spectra {

using std::numbers::pi;

namespace {

constexpr double kScanStart = 1.0;
constexpr double kBlockLength = 25.0;
constexpr double kAuditStart = 10.0;
constexpr double kRootTolerance = 1e-10;
constexpr double kPrecisionHint = 1e-9;
constexpr double kMaxHeight = 1e4;

double mean_spacing(double t) {
    const double x = t / (2.0 * pi);
    return x > std::numbers::e ? 2.0 * pi / std::log(x) : 2.0 * pi;
}

double refine_root(double lo, double z_lo, double hi, double z_hi) {
    boost::uintmax_t iterations = 200;
    const auto tol = [](double a, double b) { return std::abs(b - a) <= kRootTolerance; };
    const auto [a, b] = boost::math::tools::toms748_solve([](double t) { return hardy_z(t); }, lo, hi, z_lo, z_hi,
                                                          tol, iterations);
    return 0.5 * (a + b);
}

struct Sample {
    double t;
    double z;
};

// Looks for a sign change hidden between three same-sign samples around a
// local minimum of |Z|, recursing once on a finer grid.
void probe(const Sample& left, const Sample& right, int depth, std::vector<double>& zeros) {
    constexpr int kSubsteps = 16;
    std::vector<Sample> grid{left};
    for (int i = 1; i < kSubsteps; ++i) {
        const double t = left.t + (right.t - left.t) * i / kSubsteps;
        grid.push_back({t, hardy_z(t)});
    }
    grid.push_back(right);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (grid[i].z * grid[i + 1].z < 0.0) {
            zeros.push_back(refine_root(grid[i].t, grid[i].z, grid[i + 1].t, grid[i + 1].z));
        }
    }
    if (depth <= 0) {
        return;
    }
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const bool same = grid[i - 1].z * grid[i].z > 0.0 && grid[i].z * grid[i + 1].z > 0.0;
        if (same && std::abs(grid[i].z) < std::abs(grid[i - 1].z) && std::abs(grid[i].z) < std::abs(grid[i + 1].z)) {
            probe(grid[i - 1], grid[i + 1], depth - 1, zeros);
        }
    }
}

// Zeros of Z in (a, b], ascending.
std::vector<double> scan_interval(double a, double b, double oversample) {
    std::vector<Sample> grid;
    for (double t = a;;) {
        double z = hardy_z(t);
        if (z == 0.0) {
            t += 1e-9;  // step off an exact grid zero; the sign change is caught next
            z = hardy_z(t);
        }
        grid.push_back({t, z});
        if (t >= b) {
            break;
        }
        t = std::min(b, t + std::min(0.5, mean_spacing(t) / oversample));
    }
    std::vector<double> zeros;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (grid[i].z * grid[i + 1].z < 0.0) {
            zeros.push_back(refine_root(grid[i].t, grid[i].z, grid[i + 1].t, grid[i + 1].z));
        }
    }
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const bool same = grid[i - 1].z * grid[i].z > 0.0 && grid[i].z * grid[i + 1].z > 0.0;
        if (same && std::abs(grid[i].z) < std::abs(grid[i - 1].z) && std::abs(grid[i].z) < std::abs(grid[i + 1].z)) {
            probe(grid[i - 1], grid[i + 1], 2, zeros);
        }
    }
    std::sort(zeros.begin(), zeros.end());
    zeros.erase(std::unique(zeros.begin(), zeros.end(), [](double x, double y) { return y - x < 1e-8; }),
                zeros.end());
    std::erase_if(zeros, [&](double g) { return g <= a || g > b; });
    return zeros;
}

std::vector<double> scan(double lo, double hi, double oversample, bool parallel) {
    const auto blocks = static_cast<std::size_t>(std::ceil((hi - lo) / kBlockLength));
    std::vector<std::vector<double>> found(blocks);
    const auto body = [&](std::size_t b) {
        const double a = lo + kBlockLength * static_cast<double>(b);
        const double e = (b + 1 == blocks) ? hi : lo + kBlockLength * static_cast<double>(b + 1);
        found[b] = scan_interval(a, e, oversample);
    };
    if (parallel) {
        parallel_for(blocks, body);
    } else {
        for (std::size_t b = 0; b < blocks; ++b) body(b);
    }
    std::vector<double> zeros;
    for (const auto& f : found) {
        zeros.insert(zeros.end(), f.begin(), f.end());
    }
    return zeros;
}

double theta_integral(double a, double b) {
    return integrate([](double t) { return riemann_siegel_theta(t); }, a, b, 1e-10, 1e-13).value;
}

// Mean of N_found(t) - theta(t)/pi - 1 over [a, b].
double window_mean_s(const std::vector<double>& zeros, double a, double b) {
    double count_integral = 0.0;
    for (double g : zeros) {
        if (g >= b) break;
        count_integral += (g <= a) ? (b - a) : (b - g);
    }
    const double smooth_integral = theta_integral(a, b) / pi + (b - a);
    return (count_integral - smooth_integral) / (b - a);
}

// Window means over [10, hi]; returns the start of the first failing window or -1.
double run_windows(const std::vector<double>& zeros, double hi, double L, ZeroAudit& audit) {
    audit.windows = 0;
    audit.max_abs_mean_s = 0.0;
    for (double a = kAuditStart; a + L <= hi + 1e-9; a += L) {
        const double m = window_mean_s(zeros, a, a + L);
        ++audit.windows;
        audit.max_abs_mean_s = std::max(audit.max_abs_mean_s, std::abs(m));
        if (std::abs(m) >= 1.0) {
            return a;
        }
    }
    return -1.0;
}

// Midpoint between the consecutive zeros that bracket t, where |Z| is large.
double quiet_point(const std::vector<double>& zeros, double t, double floor_value) {
    const auto it = std::upper_bound(zeros.begin(), zeros.end(), t);
    if (it == zeros.begin() || it == zeros.end()) {
        return std::max(t, floor_value);
    }
    return std::max(0.5 * (*(it - 1) + *it), floor_value);
}

ZeroComputation compute(double t_max, const ZeroSearchOptions& opt, bool parallel) {
    if (!(t_max > 0.0) || t_max > kMaxHeight) {
        throw std::invalid_argument("compute_zeros: t_max must lie in (0, 1e4]");
    }
    if (!(opt.oversample >= 2.0) || !(opt.audit_window > 0.0)) {
        throw std::invalid_argument("compute_zeros: invalid search options");
    }
    const double L = opt.audit_window;
    const double hi = std::max(t_max, kAuditStart) + 2.0 * L;
    std::vector<double> zeros = scan(kScanStart, hi, opt.oversample, parallel);

    ZeroAudit audit;
    audit.window_length = L;
    for (int attempt = 0;; ++attempt) {
        const double failed_at = run_windows(zeros, hi, L, audit);
        if (failed_at < 0.0) {
            break;
        }
        const double lo_region = quiet_point(zeros, std::max(kScanStart, failed_at - L), kScanStart);
        const double hi_region = quiet_point(zeros, std::min(hi, failed_at + L), kScanStart);
        if (attempt >= opt.max_rescans) {
            std::ostringstream msg;
            msg << "zero-count audit failed in [" << lo_region << ", " << hi_region << "] after " << attempt
                << " rescans (mean S = " << window_mean_s(zeros, failed_at, failed_at + L) << ")";
            throw ZeroAuditError(msg.str(), lo_region, hi_region);
        }
        const double finer = opt.oversample * std::pow(4.0, attempt + 1);
        auto fresh = scan_interval(lo_region, hi_region, finer);
        std::erase_if(zeros, [&](double g) { return g > lo_region && g <= hi_region; });
        zeros.insert(zeros.end(), fresh.begin(), fresh.end());
        std::sort(zeros.begin(), zeros.end());
        ++audit.rescans;
    }

    std::erase_if(zeros, [&](double g) { return g > t_max; });
    audit.passed = true;
    audit.count = zeros.size();
    audit.smooth_count = smooth_zero_count(t_max);

    ZeroComputation out;
    out.table.ordinates = std::move(zeros);
    out.table.source = ZeroSource::Computed;
    out.table.precision_hint = kPrecisionHint;
    out.table.complete_to = t_max;
    out.audit = audit;
    return out;
}

}  // namespace

ZeroAudit audit_zero_table(const ZeroTable& table, double window) {
    if (!(window > 0.0)) {
        throw std::invalid_argument("audit_zero_table: window must be positive");
    }
    ZeroAudit audit;
    audit.window_length = window;
    audit.passed = run_windows(table.ordinates, table.complete_to, window, audit) < 0.0;
    audit.count = table.ordinates.size();
    audit.smooth_count = smooth_zero_count(table.complete_to);
    return audit;
}

ZeroComputation compute_zeros(double t_max, ZeroSearchOptions options) { return compute(t_max, options, true); }

ZeroComputation reference::compute_zeros(double t_max, ZeroSearchOptions options) {
    return compute(t_max, options, false);
}

}  // namespace spectra
