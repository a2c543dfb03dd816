#include "spectra/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "spectra/eigen.hpp"
#include "spectra/parallel.hpp"
#include "spectra/spectral_stats.hpp"

namespace spectra {

namespace {

void validate(const EnsembleConfig& c) {
    if (c.n == 0) {
        throw std::invalid_argument("matrix dimension must be positive");
    }
    if (c.samples == 0) {
        throw std::invalid_argument("sample count must be positive");
    }
}

// Runs per_sample(s) for every sample, in parallel or serially, and returns
// the per-sample vectors in sample order.
template <typename F>
std::vector<std::vector<double>> collect(std::size_t samples, bool parallel, F&& per_sample) {
    std::vector<std::vector<double>> out(samples);
    const auto body = [&](std::size_t s) { out[s] = per_sample(s); };
    if (parallel) {
        parallel_for(samples, body);
    } else {
        for (std::size_t s = 0; s < samples; ++s) body(s);
    }
    return out;
}

std::vector<double> concatenate(const std::vector<std::vector<double>>& parts) {
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    std::vector<double> all;
    all.reserve(total);
    for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    return all;
}

DensityResult density(const EnsembleConfig& c, std::size_t bins, double lo, double hi, bool parallel) {
    validate(c);
    if (bins == 0 || !(lo < hi)) {
        throw std::invalid_argument("density histogram needs bins > 0 and lo < hi");
    }
    const auto parts = collect(c.samples, parallel, [&](std::size_t s) {
        return normalized_eigenvalues(sampled_spectrum(c.n, c.dist, Seed{c.seed, s}));
    });
    DensityResult r;
    r.values = concatenate(parts);
    r.hist = Histogram::uniform(bins, lo, hi, Normalization::Density);
    for (double x : r.values) r.hist.add(x);
    r.l1 = l1_histogram_distance(r.hist, ReferenceDensity::semicircle());
    r.ks = ks_distance(r.values, ReferenceDensity::semicircle());
    return r;
}

SpacingResult spacings(const EnsembleConfig& c, double window, std::size_t bins, double hi, bool parallel) {
    validate(c);
    if (!(window > 0.0 && window <= 1.0)) {
        throw std::invalid_argument("window fraction must lie in (0, 1]");
    }
    if (bins == 0 || !(hi > 0.0)) {
        throw std::invalid_argument("spacing histogram needs bins > 0 and a positive upper edge");
    }
    const auto parts = collect(c.samples, parallel, [&](std::size_t s) {
        const Spectrum spec = sampled_spectrum(c.n, c.dist, Seed{c.seed, s});
        return bulk_spacings(normalized_eigenvalues(spec), window);
    });
    SpacingResult r;
    r.spacings = concatenate(parts);
    r.hist = Histogram::uniform(bins, 0.0, hi, Normalization::Density);
    for (double x : r.spacings) r.hist.add(x);
    r.ks_goe = ks_distance(r.spacings, ReferenceDensity::wigner_goe());
    r.ks_gue = ks_distance(r.spacings, ReferenceDensity::wigner_gue());
    r.ks_poisson = ks_distance(r.spacings, ReferenceDensity::poisson_spacing());
    return r;
}

std::vector<MomentRow> moments(const EnsembleConfig& c, unsigned kmax, bool parallel) {
    validate(c);
    const auto rows = parallel ? ensemble_moment_samples(c.n, c.dist, kmax, c.samples, c.seed)
                               : reference::ensemble_moment_samples(c.n, c.dist, kmax, c.samples, c.seed);
    std::vector<MomentRow> table;
    const auto count = static_cast<double>(c.samples);
    for (unsigned k = 0; k <= kmax; ++k) {
        double sum = 0.0;
        for (const auto& row : rows) sum += row[k];
        const double mean = sum / count;
        double ss = 0.0;
        for (const auto& row : rows) ss += (row[k] - mean) * (row[k] - mean);
        const double se = c.samples > 1 ? std::sqrt(ss / (count - 1.0) / count) : 0.0;
        table.push_back({k, mean, se, semicircle_moment(k)});
    }
    return table;
}

}  // namespace

DensityResult density_experiment(const EnsembleConfig& config, std::size_t bins, double lo, double hi) {
    return density(config, bins, lo, hi, true);
}

SpacingResult spacing_experiment(const EnsembleConfig& config, double window, std::size_t bins, double hi) {
    return spacings(config, window, bins, hi, true);
}

std::vector<MomentRow> moments_table(const EnsembleConfig& config, unsigned kmax) {
    return moments(config, kmax, true);
}

DensityResult reference::density_experiment(const EnsembleConfig& config, std::size_t bins, double lo, double hi) {
    return density(config, bins, lo, hi, false);
}

SpacingResult reference::spacing_experiment(const EnsembleConfig& config, double window, std::size_t bins,
                                            double hi) {
    return spacings(config, window, bins, hi, false);
}

std::vector<MomentRow> reference::moments_table(const EnsembleConfig& config, unsigned kmax) {
    return moments(config, kmax, false);
}

}  // namespace spectra
