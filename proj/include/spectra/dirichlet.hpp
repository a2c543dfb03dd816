#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "spectra/test_function.hpp"

namespace spectra {

/// Primes and the von Mangoldt function up to `limit`.
struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;
    /// lambda[n] = log p if n = p^r, else 0 (lambda[0] = lambda[1] = 0).
    std::vector<double> lambda;

    double von_mangoldt(std::uint64_t n) const { return lambda.at(n); }
};

/// Sieve of Eratosthenes. Throws std::invalid_argument for limit < 2.
PrimeTable sieve(std::uint64_t limit);

/// Deterministic trial division.
bool is_prime(std::uint64_t n) noexcept;

/// Smallest generator of (Z/mZ)^* for an odd prime m.
std::uint64_t primitive_root(std::uint64_t m);

/// All Dirichlet characters mod a prime m, chi_l(g^e) = exp(2 pi i l e / (m-1)),
/// stored through the discrete-log table of the generator g.
class CharacterTable {
public:
    explicit CharacterTable(std::uint64_t m);

    std::uint64_t modulus() const noexcept { return m_; }
    std::uint64_t generator() const noexcept { return g_; }
    /// m - 1, the group order and the number of characters.
    std::uint64_t order() const noexcept { return m_ - 1; }
    /// Discrete log base g of n (n not divisible by m).
    std::uint64_t index(std::uint64_t n) const;
    /// chi_l(n); 0 when m divides n. l = 0 is the principal character.
    std::complex<double> chi(std::uint64_t l, std::uint64_t n) const;

private:
    std::uint64_t m_;
    std::uint64_t g_;
    std::vector<std::uint32_t> index_;
    std::vector<std::complex<double>> roots_;
};

/// sum over all m-1 characters of chi(k), evaluated term by term and rounded;
/// the result is m-1 for k = 1 (mod m) and 0 otherwise. Throws if m | k.
std::int64_t character_sum_all(const CharacterTable& table, std::uint64_t k);

/// sum over the m-2 non-principal characters of chi(p): m-2 if p = 1 (mod m), else -1.
std::int64_t nonprincipal_sum(const CharacterTable& table, std::uint64_t p);
/// sum over non-principal chi of chi(p)^2 = chi(p^2): m-2 if p^2 = 1 (mod m), else -1.
std::int64_t nonprincipal_square_sum(const CharacterTable& table, std::uint64_t p);

/// Prime side of the family-averaged 1-level density of Dirichlet L-functions
/// mod m, with L = log(m / pi):
///   value = integral phi
///         - 2 sum_p log p / (sqrt(p) L) phi_hat(log p / L)   * avg_chi chi(p)
///         - 2 sum_p log p / (p L)       phi_hat(2 log p / L) * avg_chi chi(p)^2
/// where avg_chi is the mean over the m-2 non-principal characters. The
/// O(1/log m) remainder is not modelled; `deviation` = |value - integral phi|.
struct OneLevelDensity {
    std::uint64_t m = 0;
    double sigma = 0.0;
    double integral_phi = 0.0;
    double value = 0.0;
    double deviation = 0.0;
    /// 10 / sqrt(m), the decay envelope the deviation is checked against.
    double bound = 0.0;
    /// m^{sigma/2} / m, the shape of the family-average estimate.
    double decay_scale = 0.0;
    /// sum_p log p/(sqrt p L) phi_hat(.) avg chi(p), and the square-character counterpart.
    double first_sum = 0.0;
    double second_sum = 0.0;
    /// first_sum before averaging, split as in -1/(m-2) * all + (m-1)/(m-2) * (p = 1 mod m).
    double first_sum_all_primes = 0.0;
    double first_sum_p_equiv_1 = 0.0;
    std::size_t primes_used = 0;
    std::uint64_t generator = 0;
    /// Largest prime the support can reach, (m/pi)^sigma.
    double prime_cutoff = 0.0;
};

/// Throws std::invalid_argument if m is not a prime >= 5, if sigma >= 2
/// (the averaging bound only controls the prime sums for sigma < 2), or if the
/// sieve does not reach m^sigma.
OneLevelDensity one_level_density(std::uint64_t m, const TestFunction& tf, const PrimeTable& primes);

namespace reference {
/// Single-threaded, left-to-right summation counterpart.
OneLevelDensity one_level_density(std::uint64_t m, const TestFunction& tf, const PrimeTable& primes);
}  // namespace reference

/// Smallest sieve limit one_level_density accepts for (m, sigma).
std::uint64_t required_sieve_limit(std::uint64_t m, double sigma);

}  // namespace spectra
