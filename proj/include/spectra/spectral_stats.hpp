#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "spectra/densities.hpp"
#include "spectra/eigen.hpp"
#include "spectra/histogram.hpp"

namespace spectra {

/// lambda_i / (2 sqrt(n)), the atoms of the empirical spectral measure.
std::vector<double> normalized_eigenvalues(const Spectrum& spec);

/// Consecutive differences of the central `window_fraction` of `values` (by
/// index), divided by their own mean. Throws std::invalid_argument if the
/// fraction is outside (0, 1] or fewer than 3 values remain.
std::vector<double> bulk_spacings(std::span<const double> values, double window_fraction);

/// Point counts in the disjoint windows [x0 + kL, x0 + (k+1)L) that fit inside
/// [values.front(), values.back()]. `values` must be ascending.
std::vector<std::uint64_t> window_counts(std::span<const double> values, double length);

/// Histogram (Counts mode) of window_counts, one unit-width bin per count j
/// centred on j. Throws std::invalid_argument on empty input or length <= 0.
Histogram interval_counts(std::span<const double> values, double length);

/// Ordered-pair difference counts. Bin b collects pairs i < j with
/// x_j - x_i in (edges[b], edges[b+1]]; only positive differences are binned,
/// so each unordered pair is counted once (the negative half follows by symmetry).
struct PairCorrelation {
    Histogram hist{std::vector<double>{0.0}, Normalization::Counts};
    std::size_t points = 0;

    /// count_b / N, the statistic #{i != j : x_i - x_j in I} / N restricted to I > 0.
    std::vector<double> values() const;
    /// count_b / (N * width_b), comparable to a pair-correlation kernel.
    std::vector<double> densities() const;
};

/// `values` must be ascending. Parallel over the left index with per-thread
/// partial counts; integer counts make the result independent of the thread count.
PairCorrelation pair_correlation(std::span<const double> values, std::vector<double> edges);

namespace reference {
PairCorrelation pair_correlation(std::span<const double> values, std::vector<double> edges);
}  // namespace reference

/// Kolmogorov-Smirnov sup distance between the empirical CDF of `samples` and `cdf`.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);
double ks_distance(std::vector<double> samples, const ReferenceDensity& ref);

/// sum_b |height_b - ref(midpoint_b)| * width_b for a Density-mode histogram.
/// Throws std::invalid_argument in Counts mode.
double l1_histogram_distance(const Histogram& h, const ReferenceDensity& ref);
double l1_histogram_distance(const Histogram& h, const std::function<double(double)>& ref);

/// sum_b |values_b - integral of ref over bin b|, integrals by adaptive quadrature.
double l1_integrated_distance(const Histogram& bins, std::span<const double> values,
                              const std::function<double(double)>& ref);

}  // namespace spectra
