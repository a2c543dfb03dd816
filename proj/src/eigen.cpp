#include "spectra/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spectra/parallel.hpp"

namespace spectra {

namespace {

// Lower triangle packed by rows: row j holds columns 0..j.
inline std::size_t row_start(std::size_t j) noexcept { return j * (j + 1) / 2; }

// Householder reduction of the packed lower triangle `a` (dimension n) to
// tridiagonal form. On return diag holds the diagonal and off[i] the coupling
// between i and i+1.
void tridiagonalize(std::vector<double>& a, std::size_t n, std::vector<double>& diag, std::vector<double>& off) {
    diag.assign(n, 0.0);
    std::vector<double> e(n, 0.0);
    std::vector<double> p(n, 0.0);

    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t l = i - 1;
        double* ai = a.data() + row_start(i);
        if (l == 0) {
            e[i] = ai[0];
            continue;
        }
        double scale = 0.0;
        for (std::size_t k = 0; k <= l; ++k) {
            scale += std::abs(ai[k]);
        }
        if (scale == 0.0) {
            e[i] = ai[l];
            continue;
        }
        double h = 0.0;
        for (std::size_t k = 0; k <= l; ++k) {
            ai[k] /= scale;
            h += ai[k] * ai[k];
        }
        const double f0 = ai[l];
        const double g0 = f0 >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g0;
        h -= f0 * g0;
        ai[l] = f0 - g0;

        // p = A u with u = ai[0..l], using only the stored lower triangle.
        std::fill(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(l + 1), 0.0);
        for (std::size_t j = 0; j <= l; ++j) {
            const double* aj = a.data() + row_start(j);
            const double uj = ai[j];
            double s = 0.0;
            for (std::size_t k = 0; k < j; ++k) {
                s += aj[k] * ai[k];
                p[k] += aj[k] * uj;
            }
            p[j] += s + aj[j] * uj;
        }
        double f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
            p[j] /= h;
            f += p[j] * ai[j];
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
            p[j] -= hh * ai[j];
        }
        // A -= u q^T + q u^T
        for (std::size_t j = 0; j <= l; ++j) {
            double* aj = a.data() + row_start(j);
            const double uj = ai[j];
            const double qj = p[j];
            for (std::size_t k = 0; k <= j; ++k) {
                aj[k] -= uj * p[k] + qj * ai[k];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = a[row_start(i) + i];
    }
    off.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        off[i - 1] = e[i];
    }
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e, EigenOptions options) {
    const std::size_t n = d.size();
    e.resize(n, 0.0);
    if (n > 0) {
        e[n - 1] = 0.0;
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const std::size_t budget = options.sweeps_per_dim * std::max<std::size_t>(n, 1);
    std::size_t sweeps = 0;

    for (std::size_t l = 0; l < n; ++l) {
        std::size_t m = l;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) {
                    break;
                }
            }
            if (m == l) {
                break;
            }
            if (sweeps++ >= budget) {
                throw ConvergenceError("implicit QL did not converge within " + std::to_string(budget) +
                                       " sweeps (n=" + std::to_string(n) + ")");
            }
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            bool underflow = false;
            for (std::size_t i = m; i-- > l;) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (underflow) {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

Spectrum eigenvalues(const SymmetricMatrix& a, EigenOptions options) {
    const std::size_t n = a.dim();
    for (double v : a.packed()) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("eigenvalues: matrix has non-finite entries");
        }
    }
    Spectrum spec{n, {}};
    if (n == 1) {
        spec.values = {a(0, 0)};
        return spec;
    }
    std::vector<double> work(n * (n + 1) / 2);
    for (std::size_t j = 0; j < n; ++j) {
        double* row = work.data() + row_start(j);
        for (std::size_t k = 0; k <= j; ++k) {
            row[k] = a(k, j);
        }
    }
    std::vector<double> diag;
    std::vector<double> off;
    tridiagonalize(work, n, diag, off);
    spec.values = tridiagonal_eigenvalues(std::move(diag), std::move(off), options);
    return spec;
}

double trace_power(const SymmetricMatrix& a, unsigned k) {
    if (k == 0) {
        throw std::invalid_argument("trace_power: k must be at least 1");
    }
    const std::size_t n = a.dim();
    const std::vector<double> base = a.dense();
    double result = 0.0;
    if (k == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            result += base[i * n + i];
        }
    } else {
        std::vector<double> power = base;
        std::vector<double> next(n * n);
        for (unsigned step = 2; step < k; ++step) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    double s = 0.0;
                    for (std::size_t t = 0; t < n; ++t) {
                        s += power[i * n + t] * base[t * n + j];
                    }
                    next[i * n + j] = s;
                }
            }
            power.swap(next);
        }
        // Trace of the final product without forming it.
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t t = 0; t < n; ++t) {
                result += power[i * n + t] * base[t * n + i];
            }
        }
    }
    if (!std::isfinite(result)) {
        throw std::overflow_error("trace_power: result is not finite");
    }
    return result;
}

double empirical_moment(const Spectrum& spec, unsigned k) {
    if (k == 0) {
        return 1.0;
    }
    const double n = static_cast<double>(spec.n);
    const double scale = 2.0 * std::sqrt(n);
    double sum = 0.0;
    for (double lambda : spec.values) {
        sum += std::pow(lambda / scale, static_cast<int>(k));
    }
    return sum / n;
}

Spectrum sampled_spectrum(std::size_t n, EntryDistribution dist, Seed seed) {
    try {
        return eigenvalues(sample_matrix(n, dist, seed));
    } catch (const ConvergenceError& err) {
        throw ConvergenceError(std::string(err.what()) + "; matrix seed master=" + std::to_string(seed.master) +
                               " stream=" + std::to_string(seed.stream));
    }
}

namespace {

std::vector<double> moments_of(const Spectrum& spec, unsigned kmax) {
    std::vector<double> row(kmax + 1);
    for (unsigned k = 0; k <= kmax; ++k) {
        row[k] = empirical_moment(spec, k);
    }
    return row;
}

void check_samples(std::size_t num_samples) {
    if (num_samples == 0) {
        throw std::invalid_argument("number of samples must be at least 1");
    }
}

}  // namespace

std::vector<std::vector<double>> ensemble_moment_samples(std::size_t n, EntryDistribution dist, unsigned kmax,
                                                         std::size_t num_samples, std::uint64_t master_seed) {
    check_samples(num_samples);
    std::vector<std::vector<double>> rows(num_samples);
    parallel_for(num_samples, [&](std::size_t s) {
        rows[s] = moments_of(sampled_spectrum(n, dist, {master_seed, s}), kmax);
    });
    return rows;
}

std::vector<std::vector<double>> reference::ensemble_moment_samples(std::size_t n, EntryDistribution dist,
                                                                    unsigned kmax, std::size_t num_samples,
                                                                    std::uint64_t master_seed) {
    check_samples(num_samples);
    std::vector<std::vector<double>> rows(num_samples);
    for (std::size_t s = 0; s < num_samples; ++s) {
        rows[s] = moments_of(sampled_spectrum(n, dist, {master_seed, s}), kmax);
    }
    return rows;
}

double ensemble_moment(std::size_t n, EntryDistribution dist, unsigned k, std::size_t num_samples,
                       std::uint64_t master_seed) {
    const auto rows = ensemble_moment_samples(n, dist, k, num_samples, master_seed);
    double sum = 0.0;
    for (const auto& row : rows) {
        sum += row[k];
    }
    return sum / static_cast<double>(rows.size());
}

}  // namespace spectra
