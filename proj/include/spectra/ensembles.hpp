#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "spectra/rng.hpp"

namespace spectra {

/// Law of the i.i.d. matrix entries. Gaussian is mean 0, variance 1; uniform is
/// on [-1, 1]; Cauchy has density 1 / (pi (1 + x^2)).
enum class EntryDistribution { StandardGaussian, UniformSymmetric, Cauchy };

std::string_view to_string(EntryDistribution dist) noexcept;
/// Accepts "gaussian", "uniform" and "cauchy"; throws std::invalid_argument otherwise.
EntryDistribution parse_distribution(std::string_view name);

double sample_entry(EntryDistribution dist, CounterRng& rng) noexcept;

/// Real symmetric n x n matrix stored as its packed upper triangle (row-major,
/// i <= j). Entry (i, j) and (j, i) refer to the same storage.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(std::size_t n);
    /// Builds from a dense row-major n x n array; only the upper triangle is read.
    static SymmetricMatrix from_dense(std::size_t n, std::span<const double> dense);

    std::size_t dim() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return packed_[offset(i, j)]; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return packed_[offset(i, j)]; }

    std::span<const double> packed() const noexcept { return packed_; }
    std::span<double> packed() noexcept { return packed_; }

    /// Full row-major n x n copy.
    std::vector<double> dense() const;
    double max_abs() const noexcept;
    double trace() const noexcept;

private:
    std::size_t offset(std::size_t i, std::size_t j) const noexcept {
        if (i > j) {
            std::swap(i, j);
        }
        return i * n_ - i * (i - 1) / 2 + (j - i);
    }

    std::size_t n_;
    std::vector<double> packed_;
};

/// Draws the n(n+1)/2 upper-triangle entries (diagonal included) from `dist`
/// using the substream named by `seed`. Throws std::invalid_argument for n = 0.
SymmetricMatrix sample_matrix(std::size_t n, EntryDistribution dist, Seed seed);

}  // namespace spectra
