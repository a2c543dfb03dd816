#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

namespace spectra {

/// Sets the OpenMP team size used by the parallel kernels (0 keeps the default).
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, count) across the OpenMP team. Each index must
/// write only to its own output slot. If any call throws, the exception from
/// the lowest failing index is rethrown after the loop, so error reporting is
/// independent of scheduling.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
    std::vector<std::exception_ptr> errors(count);
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }
}

/// Pairwise tree sum over fixed leaves; the association order depends only on
/// the number of leaves.
double tree_sum(std::vector<double> leaves);

}  // namespace spectra
