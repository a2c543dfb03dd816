#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace spectra {

enum class Normalization { Counts, Density };

/// Binned counts over explicit ascending edges, with underflow/overflow
/// buckets. Bins are half-open [left, right); values at or above the last
/// edge land in overflow.
class Histogram {
public:
    explicit Histogram(std::vector<double> edges, Normalization mode = Normalization::Density);
    static Histogram uniform(std::size_t bins, double lo, double hi, Normalization mode = Normalization::Density);

    void add(double x) noexcept;
    void add_to_bin(std::size_t bin, std::uint64_t count = 1) noexcept { counts_[bin] += count; }
    void add_underflow(std::uint64_t count = 1) noexcept { underflow_ += count; }
    void add_overflow(std::uint64_t count = 1) noexcept { overflow_ += count; }

    /// Adds the counts of `other`; the edges must be identical.
    void merge(const Histogram& other);

    std::size_t bins() const noexcept { return counts_.size(); }
    const std::vector<double>& edges() const noexcept { return edges_; }
    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
    std::uint64_t underflow() const noexcept { return underflow_; }
    std::uint64_t overflow() const noexcept { return overflow_; }
    std::uint64_t in_range() const noexcept;
    std::uint64_t total() const noexcept { return in_range() + underflow_ + overflow_; }

    Normalization normalization() const noexcept { return mode_; }
    void set_normalization(Normalization mode) noexcept { mode_ = mode; }

    double left(std::size_t b) const noexcept { return edges_[b]; }
    double right(std::size_t b) const noexcept { return edges_[b + 1]; }
    double width(std::size_t b) const noexcept { return edges_[b + 1] - edges_[b]; }
    double midpoint(std::size_t b) const noexcept { return 0.5 * (edges_[b] + edges_[b + 1]); }

    /// Raw counts in Counts mode; count / (total * width) in Density mode,
    /// where total includes the underflow and overflow buckets.
    std::vector<double> heights() const;
    /// count / (total * width), regardless of the mode.
    std::vector<double> densities() const;

private:
    std::vector<double> edges_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t underflow_ = 0;
    std::uint64_t overflow_ = 0;
    Normalization mode_;
    bool uniform_ = false;
};

/// A named reference column for CSV output, evaluated at bin midpoints.
struct ReferenceColumn {
    std::string name;
    std::function<double(double)> density;
};

/// Writes `bin_left,bin_right,count,density,reference_density[,extra...]`, one
/// row per bin, then `#underflow=` and `#overflow=` lines. The first reference
/// fills `reference_density`; further references become extra columns named
/// `reference_<name>`. Reals are printed with 17 significant digits.
/// `densities`, when given, replaces Histogram::densities() in the density column.
void write_histogram_csv(std::ostream& out, const Histogram& hist, const std::vector<ReferenceColumn>& references,
                         const std::vector<double>* densities = nullptr);

/// printf("%.17g") formatting used by every artifact.
std::string format_real(double x);

}  // namespace spectra
