#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spectra/ensembles.hpp"
#include "spectra/histogram.hpp"

namespace spectra {

struct EnsembleConfig {
    std::size_t n = 0;
    std::size_t samples = 0;
    EntryDistribution dist = EntryDistribution::StandardGaussian;
    std::uint64_t seed = 0;
};

/// Pooled normalized eigenvalues of `samples` matrices against the semicircle.
struct DensityResult {
    Histogram hist{std::vector<double>{0.0}};
    /// Normalized eigenvalues in sample order.
    std::vector<double> values;
    double l1 = 0.0;
    double ks = 0.0;
};

DensityResult density_experiment(const EnsembleConfig& config, std::size_t bins = 100, double lo = -1.5,
                                 double hi = 1.5);

/// Pooled bulk spacings, each matrix normalized by its own mean spacing.
struct SpacingResult {
    Histogram hist{std::vector<double>{0.0}};
    std::vector<double> spacings;
    double ks_goe = 0.0;
    double ks_gue = 0.0;
    double ks_poisson = 0.0;
};

SpacingResult spacing_experiment(const EnsembleConfig& config, double window = 0.2, std::size_t bins = 60,
                                 double hi = 3.0);

struct MomentRow {
    unsigned k = 0;
    double mean = 0.0;
    double std_error = 0.0;
    double semicircle = 0.0;
};

std::vector<MomentRow> moments_table(const EnsembleConfig& config, unsigned kmax);

namespace reference {
DensityResult density_experiment(const EnsembleConfig& config, std::size_t bins = 100, double lo = -1.5,
                                 double hi = 1.5);
SpacingResult spacing_experiment(const EnsembleConfig& config, double window = 0.2, std::size_t bins = 60,
                                 double hi = 3.0);
std::vector<MomentRow> moments_table(const EnsembleConfig& config, unsigned kmax);
}  // namespace reference

}  // namespace spectra
