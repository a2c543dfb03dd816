#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spectra/ensembles.hpp"

namespace spectra {

/// Ascending eigenvalues of one n x n symmetric matrix.
struct Spectrum {
    std::size_t n = 0;
    std::vector<double> values;
};

/// Raised when the implicit QL iteration exceeds its sweep budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EigenOptions {
    /// Total implicit-shift sweeps allowed, as a multiple of the dimension.
    std::size_t sweeps_per_dim = 30;
};

/// All eigenvalues of `a`, ascending. Householder reduction to tridiagonal
/// form followed by implicit-shift QL; no eigenvectors are formed.
Spectrum eigenvalues(const SymmetricMatrix& a, EigenOptions options = {});

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (off[i] couples i and i+1). Both are consumed.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> off,
                                            EigenOptions options = {});

/// Trace(A^k) by explicit dense matrix products; shares no code with the
/// eigensolver. Throws std::overflow_error if the result is not finite.
double trace_power(const SymmetricMatrix& a, unsigned k);

/// M_{A,N}(k) = sum_i lambda_i^k / (2^k N^{k/2+1}).
double empirical_moment(const Spectrum& spec, unsigned k);

/// Mean of empirical_moment over `num_samples` matrices drawn with streams
/// 0..num_samples-1 under `master_seed`. Samples are solved in parallel; the
/// mean is accumulated in sample order, so the result does not depend on the
/// thread count.
double ensemble_moment(std::size_t n, EntryDistribution dist, unsigned k, std::size_t num_samples,
                       std::uint64_t master_seed);

/// Per-sample moments M_{A,N}(k) for k = 0..kmax; row s holds sample s.
std::vector<std::vector<double>> ensemble_moment_samples(std::size_t n, EntryDistribution dist, unsigned kmax,
                                                         std::size_t num_samples, std::uint64_t master_seed);

namespace reference {
/// Single-threaded counterpart of spectra::ensemble_moment_samples.
std::vector<std::vector<double>> ensemble_moment_samples(std::size_t n, EntryDistribution dist, unsigned kmax,
                                                         std::size_t num_samples, std::uint64_t master_seed);
}  // namespace reference

/// Spectrum of the matrix for `seed`; a ConvergenceError is rethrown with the
/// seed attached so the failing draw can be reproduced.
Spectrum sampled_spectrum(std::size_t n, EntryDistribution dist, Seed seed);

}  // namespace spectra
