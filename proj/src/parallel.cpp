#include "spectra/parallel.hpp"

#include <omp.h>

namespace spectra {

void set_thread_count(int threads) {
    if (threads > 0) {
        omp_set_num_threads(threads);
    }
}

int thread_count() { return omp_get_max_threads(); }

double tree_sum(std::vector<double> leaves) {
    if (leaves.empty()) {
        return 0.0;
    }
    while (leaves.size() > 1) {
        std::size_t out = 0;
        for (std::size_t i = 0; i + 1 < leaves.size(); i += 2) {
            leaves[out++] = leaves[i] + leaves[i + 1];
        }
        if (leaves.size() % 2 == 1) {
            leaves[out++] = leaves.back();
        }
        leaves.resize(out);
    }
    return leaves.front();
}

}  // namespace spectra
