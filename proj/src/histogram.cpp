#include "spectra/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace spectra {

Histogram::Histogram(std::vector<double> edges, Normalization mode) : edges_(std::move(edges)), mode_(mode) {
    if (edges_.empty()) {
        throw std::invalid_argument("histogram needs at least one edge");
    }
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (!(edges_[i] > edges_[i - 1])) {
            throw std::invalid_argument("histogram edges must be strictly ascending");
        }
    }
    counts_.assign(edges_.size() - 1, 0);
}

Histogram Histogram::uniform(std::size_t bins, double lo, double hi, Normalization mode) {
    if (bins == 0 || !(hi > lo)) {
        throw std::invalid_argument("uniform histogram needs bins >= 1 and hi > lo");
    }
    std::vector<double> edges(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    }
    edges.back() = hi;
    Histogram h(std::move(edges), mode);
    h.uniform_ = true;
    return h;
}

void Histogram::add(double x) noexcept {
    if (counts_.empty()) {
        if (x < edges_.front()) {
            ++underflow_;
        } else {
            ++overflow_;
        }
        return;
    }
    if (!(x >= edges_.front())) {
        ++underflow_;
        return;
    }
    if (x >= edges_.back()) {
        ++overflow_;
        return;
    }
    std::size_t b;
    if (uniform_) {
        const double pos = (x - edges_.front()) / (edges_.back() - edges_.front()) * static_cast<double>(bins());
        b = std::min(static_cast<std::size_t>(pos), bins() - 1);
        // Floating-point guard so membership always matches the stored edges.
        while (b > 0 && x < edges_[b]) --b;
        while (b + 1 < bins() && x >= edges_[b + 1]) ++b;
    } else {
        b = static_cast<std::size_t>(std::upper_bound(edges_.begin(), edges_.end(), x) - edges_.begin()) - 1;
    }
    ++counts_[b];
}

void Histogram::merge(const Histogram& other) {
    if (other.edges_ != edges_) {
        throw std::invalid_argument("cannot merge histograms with different edges");
    }
    for (std::size_t b = 0; b < counts_.size(); ++b) {
        counts_[b] += other.counts_[b];
    }
    underflow_ += other.underflow_;
    overflow_ += other.overflow_;
}

std::uint64_t Histogram::in_range() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::vector<double> Histogram::densities() const {
    std::vector<double> out(bins(), 0.0);
    const std::uint64_t n = total();
    if (n == 0) {
        return out;
    }
    for (std::size_t b = 0; b < bins(); ++b) {
        out[b] = static_cast<double>(counts_[b]) / (static_cast<double>(n) * width(b));
    }
    return out;
}

std::vector<double> Histogram::heights() const {
    if (mode_ == Normalization::Density) {
        return densities();
    }
    return {counts_.begin(), counts_.end()};
}

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_histogram_csv(std::ostream& out, const Histogram& hist, const std::vector<ReferenceColumn>& references,
                         const std::vector<double>* densities) {
    const std::vector<double> dens = densities ? *densities : hist.densities();
    out << "bin_left,bin_right,count,density,reference_density";
    for (std::size_t r = 1; r < references.size(); ++r) {
        out << ",reference_" << references[r].name;
    }
    out << '\n';
    for (std::size_t b = 0; b < hist.bins(); ++b) {
        out << format_real(hist.left(b)) << ',' << format_real(hist.right(b)) << ',' << hist.counts()[b] << ','
            << format_real(dens[b]) << ',';
        if (!references.empty()) {
            out << format_real(references.front().density(hist.midpoint(b)));
        }
        for (std::size_t r = 1; r < references.size(); ++r) {
            out << ',' << format_real(references[r].density(hist.midpoint(b)));
        }
        out << '\n';
    }
    out << "#underflow=" << hist.underflow() << '\n';
    out << "#overflow=" << hist.overflow() << '\n';
}

}  // namespace spectra
