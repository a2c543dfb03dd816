#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace spectra {

/// Identifies one reproducible random substream: a master seed for the run and
/// a per-item stream index (one stream per sampled matrix).
struct Seed {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;
};

/// Philox4x32-10 counter-based generator.
///
/// The 64-bit master seed is the key; the counter is (stream, block index).
/// Any (master, stream) pair therefore names an independent sequence that can
/// be generated on any thread in any order with identical output.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(Seed seed) noexcept
        : key_{static_cast<std::uint32_t>(seed.master), static_cast<std::uint32_t>(seed.master >> 32)},
          stream_(seed.stream) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept {
        if (used_ == 2) {
            refill();
        }
        return buffer_[used_++];
    }

    /// Uniform double on the open interval (0, 1); never returns 0 or 1.
    double uniform_open() noexcept {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Number of 128-bit Philox blocks consumed so far.
    std::uint64_t blocks() const noexcept { return block_; }

    /// The bare Philox4x32-10 bijection.
    static std::array<std::uint32_t, 4> philox(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) noexcept {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
            key[0] += 0x9E3779B9u;
            key[1] += 0xBB67AE85u;
        }
        return ctr;
    }

private:
    void refill() noexcept {
        const auto ctr = philox({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                                 static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                                key_);
        buffer_[0] = (std::uint64_t{ctr[1]} << 32) | ctr[0];
        buffer_[1] = (std::uint64_t{ctr[3]} << 32) | ctr[2];
        ++block_;
        used_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int used_ = 2;
};

/// Cauchy inverse CDF: tan(pi (u - 1/2)).
inline double cauchy_quantile(double u) noexcept {
    return std::tan(std::numbers::pi * (u - 0.5));
}

inline double sample_uniform(CounterRng& rng) noexcept {
    return 2.0 * rng.uniform_open() - 1.0;
}

inline double sample_cauchy(CounterRng& rng) noexcept {
    return cauchy_quantile(rng.uniform_open());
}

/// Standard normal via Box-Muller; consumes two uniforms per draw and keeps no
/// cached state, so a draw depends only on the generator position.
inline double sample_gaussian(CounterRng& rng) noexcept {
    const double u1 = rng.uniform_open();
    const double u2 = rng.uniform_open();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace spectra
