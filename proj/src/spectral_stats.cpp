#include "spectra/spectral_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <omp.h>

#include "spectra/numerics.hpp"

namespace spectra {

std::vector<double> normalized_eigenvalues(const Spectrum& spec) {
    if (spec.values.empty()) {
        throw std::invalid_argument("normalized_eigenvalues: empty spectrum");
    }
    const double scale = 2.0 * std::sqrt(static_cast<double>(spec.n));
    std::vector<double> out(spec.values.size());
    std::transform(spec.values.begin(), spec.values.end(), out.begin(), [scale](double v) { return v / scale; });
    return out;
}

std::vector<double> bulk_spacings(std::span<const double> values, double window_fraction) {
    if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
        throw std::invalid_argument("bulk window fraction must lie in (0, 1]");
    }
    const std::size_t n = values.size();
    const auto keep = std::min<std::size_t>(n, static_cast<std::size_t>(std::llround(window_fraction * n)));
    if (keep < 3) {
        throw std::invalid_argument("bulk_spacings: fewer than 3 values in the window");
    }
    const std::size_t start = (n - keep) / 2;
    std::vector<double> gaps(keep - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < keep; ++i) {
        gaps[i] = values[start + i + 1] - values[start + i];
        sum += gaps[i];
    }
    const double mean = sum / static_cast<double>(gaps.size());
    if (!(mean > 0.0)) {
        throw std::invalid_argument("bulk_spacings: degenerate window (zero mean spacing)");
    }
    for (double& g : gaps) {
        g /= mean;
    }
    return gaps;
}

std::vector<std::uint64_t> window_counts(std::span<const double> values, double length) {
    if (values.empty()) {
        throw std::invalid_argument("interval counts need at least one point");
    }
    if (!(length > 0.0)) {
        throw std::invalid_argument("interval length must be positive");
    }
    const double x0 = values.front();
    const auto windows = static_cast<std::size_t>(std::floor((values.back() - x0) / length));
    std::vector<std::uint64_t> counts(windows, 0);
    for (double x : values) {
        const double pos = (x - x0) / length;
        const auto k = static_cast<std::size_t>(std::floor(pos));
        if (k < windows) {
            ++counts[k];
        }
    }
    return counts;
}

Histogram interval_counts(std::span<const double> values, double length) {
    const auto counts = window_counts(values, length);
    const std::uint64_t jmax = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
    std::vector<double> edges(jmax + 2);
    for (std::size_t j = 0; j < edges.size(); ++j) {
        edges[j] = static_cast<double>(j) - 0.5;
    }
    Histogram h(std::move(edges), Normalization::Counts);
    for (std::uint64_t c : counts) {
        h.add_to_bin(c);
    }
    return h;
}

std::vector<double> PairCorrelation::values() const {
    std::vector<double> out(hist.bins(), 0.0);
    if (points == 0) return out;
    for (std::size_t b = 0; b < hist.bins(); ++b) {
        out[b] = static_cast<double>(hist.counts()[b]) / static_cast<double>(points);
    }
    return out;
}

std::vector<double> PairCorrelation::densities() const {
    std::vector<double> out = values();
    for (std::size_t b = 0; b < out.size(); ++b) {
        out[b] /= hist.width(b);
    }
    return out;
}

namespace {

void check_pair_input(std::span<const double> values, const std::vector<double>& edges) {
    if (values.size() < 2) {
        throw std::invalid_argument("pair correlation needs at least 2 values");
    }
    if (edges.empty()) {
        throw std::invalid_argument("pair correlation needs bin edges");
    }
}

// Adds all pairs (i, j > i) for one left index into local counts.
void accumulate_row(std::span<const double> values, const std::vector<double>& edges, std::size_t i,
                    std::vector<std::uint64_t>& counts, std::uint64_t& underflow) {
    const double top = edges.back();
    const double bottom = edges.front();
    for (std::size_t j = i + 1; j < values.size(); ++j) {
        const double d = values[j] - values[i];
        if (d > top) {
            break;
        }
        if (d <= bottom) {
            ++underflow;
            continue;
        }
        // first edge >= d closes the bin (left, right]
        const auto it = std::lower_bound(edges.begin(), edges.end(), d);
        ++counts[static_cast<std::size_t>(it - edges.begin()) - 1];
    }
}

PairCorrelation finish(std::size_t points, std::vector<double> edges, const std::vector<std::uint64_t>& counts,
                       std::uint64_t underflow) {
    PairCorrelation pc{Histogram(std::move(edges), Normalization::Counts), points};
    for (std::size_t b = 0; b < counts.size(); ++b) {
        pc.hist.add_to_bin(b, counts[b]);
    }
    pc.hist.add_underflow(underflow);
    return pc;
}

}  // namespace

PairCorrelation pair_correlation(std::span<const double> values, std::vector<double> edges) {
    check_pair_input(values, edges);
    const std::size_t bins = edges.size() - 1;
    std::vector<std::uint64_t> counts(bins, 0);
    std::uint64_t underflow = 0;
    const auto n = static_cast<std::int64_t>(values.size());
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(bins, 0);
        std::uint64_t local_under = 0;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            accumulate_row(values, edges, static_cast<std::size_t>(i), local, local_under);
        }
#pragma omp critical(spectra_pair_merge)
        {
            for (std::size_t b = 0; b < bins; ++b) counts[b] += local[b];
            underflow += local_under;
        }
    }
    return finish(values.size(), std::move(edges), counts, underflow);
}

PairCorrelation reference::pair_correlation(std::span<const double> values, std::vector<double> edges) {
    check_pair_input(values, edges);
    std::vector<std::uint64_t> counts(edges.size() - 1, 0);
    std::uint64_t underflow = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        accumulate_row(values, edges, i, counts, underflow);
    }
    return finish(values.size(), std::move(edges), counts, underflow);
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) {
        throw std::invalid_argument("ks_distance needs at least one sample");
    }
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

double ks_distance(std::vector<double> samples, const ReferenceDensity& ref) {
    return ks_distance(std::move(samples), [&ref](double x) { return cdf_eval(ref, x); });
}

double l1_histogram_distance(const Histogram& h, const std::function<double(double)>& ref) {
    if (h.normalization() != Normalization::Density) {
        throw std::invalid_argument("l1_histogram_distance requires a Density-mode histogram");
    }
    const auto heights = h.heights();
    double sum = 0.0;
    for (std::size_t b = 0; b < h.bins(); ++b) {
        sum += std::abs(heights[b] - ref(h.midpoint(b))) * h.width(b);
    }
    return sum;
}

double l1_histogram_distance(const Histogram& h, const ReferenceDensity& ref) {
    return l1_histogram_distance(h, [&ref](double x) { return density_eval(ref, x); });
}

double l1_integrated_distance(const Histogram& bins, std::span<const double> values,
                              const std::function<double(double)>& ref) {
    if (values.size() != bins.bins()) {
        throw std::invalid_argument("l1_integrated_distance: value count does not match bins");
    }
    double sum = 0.0;
    for (std::size_t b = 0; b < bins.bins(); ++b) {
        const double mass = integrate(ref, bins.left(b), bins.right(b), 1e-13, 1e-12).value;
        sum += std::abs(values[b] - mass);
    }
    return sum;
}

}  // namespace spectra
