#include "spectra/ensembles.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace spectra {

std::string_view to_string(EntryDistribution dist) noexcept {
    switch (dist) {
        case EntryDistribution::StandardGaussian: return "gaussian";
        case EntryDistribution::UniformSymmetric: return "uniform";
        case EntryDistribution::Cauchy: return "cauchy";
    }
    return "unknown";
}

EntryDistribution parse_distribution(std::string_view name) {
    if (name == "gaussian") return EntryDistribution::StandardGaussian;
    if (name == "uniform") return EntryDistribution::UniformSymmetric;
    if (name == "cauchy") return EntryDistribution::Cauchy;
    throw std::invalid_argument("unknown entry distribution '" + std::string(name) +
                                "' (expected gaussian, uniform or cauchy)");
}

double sample_entry(EntryDistribution dist, CounterRng& rng) noexcept {
    switch (dist) {
        case EntryDistribution::StandardGaussian: return sample_gaussian(rng);
        case EntryDistribution::UniformSymmetric: return sample_uniform(rng);
        case EntryDistribution::Cauchy: return sample_cauchy(rng);
    }
    return 0.0;
}

SymmetricMatrix::SymmetricMatrix(std::size_t n) : n_(n), packed_(n * (n + 1) / 2, 0.0) {
    if (n == 0) {
        throw std::invalid_argument("matrix dimension must be at least 1");
    }
}

SymmetricMatrix SymmetricMatrix::from_dense(std::size_t n, std::span<const double> dense) {
    if (dense.size() != n * n) {
        throw std::invalid_argument("dense array size does not match n*n");
    }
    SymmetricMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            a(i, j) = dense[i * n + j];
        }
    }
    return a;
}

std::vector<double> SymmetricMatrix::dense() const {
    std::vector<double> out(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            out[i * n_ + j] = (*this)(i, j);
        }
    }
    return out;
}

double SymmetricMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (double v : packed_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double SymmetricMatrix::trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

SymmetricMatrix sample_matrix(std::size_t n, EntryDistribution dist, Seed seed) {
    if (n == 0) {
        throw std::invalid_argument("sample_matrix: dimension must be at least 1");
    }
    SymmetricMatrix a(n);
    CounterRng rng(seed);
    for (double& entry : a.packed()) {
        entry = sample_entry(dist, rng);
    }
    return a;
}

}  // namespace spectra
