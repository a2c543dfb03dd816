#include "spectra/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "spectra/parallel.hpp"

namespace spectra {

using std::numbers::pi;

PrimeTable sieve(std::uint64_t limit) {
    if (limit < 2) {
        throw std::invalid_argument("sieve limit must be at least 2");
    }
    PrimeTable table;
    table.limit = limit;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i * i <= limit; ++i) {
        if (!composite[i]) {
            for (std::uint64_t j = i * i; j <= limit; j += i) {
                composite[j] = true;
            }
        }
    }
    table.lambda.assign(limit + 1, 0.0);
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) {
            continue;
        }
        table.primes.push_back(p);
        const double logp = std::log(static_cast<double>(p));
        for (std::uint64_t q = p; q <= limit; q *= p) {
            table.lambda[q] = logp;
            if (q > limit / p) {
                break;
            }
        }
    }
    return table;
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

std::uint64_t primitive_root(std::uint64_t m) {
    if (m < 3 || !is_prime(m)) {
        throw std::invalid_argument("primitive_root: " + std::to_string(m) + " is not an odd prime");
    }
    const auto factors = prime_factors(m - 1);
    for (std::uint64_t g = 2; g < m; ++g) {
        const bool generates = std::all_of(factors.begin(), factors.end(),
                                           [&](std::uint64_t q) { return powmod(g, (m - 1) / q, m) != 1; });
        if (generates) {
            return g;
        }
    }
    throw std::logic_error("no primitive root found");  // unreachable for prime m
}

CharacterTable::CharacterTable(std::uint64_t m) : m_(m), g_(primitive_root(m)) {
    if (m > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument("character table modulus too large");
    }
    index_.assign(m, 0);
    std::uint64_t x = 1;
    for (std::uint64_t e = 0; e + 1 < m; ++e) {
        index_[x] = static_cast<std::uint32_t>(e);
        x = mulmod(x, g_, m);
    }
    const std::uint64_t order = m - 1;
    roots_.resize(order);
    for (std::uint64_t j = 0; j < order; ++j) {
        const double angle = 2.0 * pi * static_cast<double>(j) / static_cast<double>(order);
        roots_[j] = {std::cos(angle), std::sin(angle)};
    }
}

std::uint64_t CharacterTable::index(std::uint64_t n) const {
    const std::uint64_t r = n % m_;
    if (r == 0) {
        throw std::invalid_argument("discrete log undefined for multiples of the modulus");
    }
    return index_[r];
}

std::complex<double> CharacterTable::chi(std::uint64_t l, std::uint64_t n) const {
    const std::uint64_t r = n % m_;
    if (r == 0) {
        return 0.0;
    }
    return roots_[mulmod(l % order(), index_[r], order())];
}

std::int64_t character_sum_all(const CharacterTable& table, std::uint64_t k) {
    if (k % table.modulus() == 0) {
        throw std::invalid_argument("character_sum_all: k must be coprime to the modulus");
    }
    std::complex<double> sum = 0.0;
    for (std::uint64_t l = 0; l < table.order(); ++l) {
        sum += table.chi(l, k);
    }
    const double rounded = std::round(sum.real());
    const double tol = 1e-8 * static_cast<double>(table.modulus());
    if (std::abs(sum.real() - rounded) > tol || std::abs(sum.imag()) > tol) {
        throw std::logic_error("character sum is not an integer within tolerance");
    }
    return static_cast<std::int64_t>(rounded);
}

namespace {

void check_coprime(const CharacterTable& table, std::uint64_t p) {
    if (p % table.modulus() == 0) {
        throw std::invalid_argument("prime must differ from the modulus");
    }
}

}  // namespace

std::int64_t nonprincipal_sum(const CharacterTable& table, std::uint64_t p) {
    check_coprime(table, p);
    const std::uint64_t m = table.modulus();
    return p % m == 1 ? static_cast<std::int64_t>(m) - 2 : -1;
}

std::int64_t nonprincipal_square_sum(const CharacterTable& table, std::uint64_t p) {
    check_coprime(table, p);
    const std::uint64_t m = table.modulus();
    return mulmod(p % m, p % m, m) == 1 ? static_cast<std::int64_t>(m) - 2 : -1;
}

std::uint64_t required_sieve_limit(std::uint64_t m, double sigma) {
    const double need = std::ceil(std::pow(static_cast<double>(m), sigma));
    return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(need));
}

namespace {

// Per-prime contributions; the three term arrays are summed by the caller.
struct DensityTerms {
    std::vector<double> first;
    std::vector<double> first_weight;  // before the character average
    std::vector<double> second;
    std::vector<char> equiv_one;
};

struct Setup {
    std::uint64_t m;
    TestFunction tf;
    double log_conductor;
    std::size_t count;  // primes with p < (m/pi)^sigma
    double cutoff;
};

Setup prepare(std::uint64_t m, const TestFunction& tf_in, const PrimeTable& primes) {
    if (m < 5 || !is_prime(m)) {
        throw std::invalid_argument("one_level_density: modulus must be a prime >= 5");
    }
    const TestFunction tf = tf_in.to_two_pi();
    const double sigma = tf.sigma();
    if (!(sigma < 2.0)) {
        throw std::invalid_argument(
            "one_level_density: sigma must be < 2; the family average only bounds the prime sums below "
            "m^(sigma/2)/m when sigma < 2");
    }
    const std::uint64_t need = required_sieve_limit(m, sigma);
    if (primes.limit < need) {
        throw std::invalid_argument("one_level_density: sieve limit " + std::to_string(primes.limit) +
                                    " is too small; required limit " + std::to_string(need));
    }
    const double log_conductor = std::log(static_cast<double>(m) / pi);
    // phi_hat(log p / L) vanishes once log p >= sigma L.
    const double cutoff = std::exp(sigma * log_conductor);
    if (cutoff > static_cast<double>(primes.limit)) {
        throw std::logic_error("one_level_density: support reaches beyond the sieve");
    }
    const auto end = std::lower_bound(primes.primes.begin(), primes.primes.end(), cutoff,
                                      [](std::uint64_t p, double c) { return static_cast<double>(p) < c; });
    return {m, tf, log_conductor, static_cast<std::size_t>(end - primes.primes.begin()), cutoff};
}

void fill_term(const Setup& s, const CharacterTable& table, const PrimeTable& primes, std::size_t i,
               DensityTerms& t) {
    const std::uint64_t p = primes.primes[i];
    if (p == s.m) {
        t.first[i] = t.first_weight[i] = t.second[i] = 0.0;
        t.equiv_one[i] = 0;
        return;
    }
    const double logp = std::log(static_cast<double>(p));
    const double L = s.log_conductor;
    const double denom = static_cast<double>(s.m - 2);
    const double w1 = logp / (std::sqrt(static_cast<double>(p)) * L) * s.tf.phi_hat(logp / L);
    const double w2 = logp / (static_cast<double>(p) * L) * s.tf.phi_hat(2.0 * logp / L);
    t.first_weight[i] = w1;
    t.first[i] = w1 * static_cast<double>(nonprincipal_sum(table, p)) / denom;
    t.second[i] = w2 * static_cast<double>(nonprincipal_square_sum(table, p)) / denom;
    t.equiv_one[i] = (p % s.m == 1) ? 1 : 0;
}

OneLevelDensity assemble(const Setup& s, const CharacterTable& table, const DensityTerms& t, double first,
                         double second, double all, double equiv) {
    OneLevelDensity r;
    r.m = s.m;
    r.sigma = s.tf.sigma();
    r.integral_phi = s.tf.integral_phi();
    r.first_sum = first;
    r.second_sum = second;
    r.first_sum_all_primes = all;
    r.first_sum_p_equiv_1 = equiv;
    r.value = r.integral_phi - 2.0 * first - 2.0 * second;
    r.deviation = std::abs(r.value - r.integral_phi);
    r.bound = 10.0 / std::sqrt(static_cast<double>(s.m));
    r.decay_scale = std::pow(static_cast<double>(s.m), r.sigma / 2.0) / static_cast<double>(s.m);
    r.generator = table.generator();
    r.prime_cutoff = s.cutoff;
    r.primes_used = static_cast<std::size_t>(
        std::count_if(t.first_weight.begin(), t.first_weight.end(), [](double w) { return w != 0.0; }));
    return r;
}

constexpr std::size_t kBlock = 512;

// Fixed-block sums combined by a pairwise tree: the association order depends
// only on the number of terms.
double block_tree_sum(const std::vector<double>& terms, const std::vector<char>* mask) {
    const std::size_t blocks = (terms.size() + kBlock - 1) / kBlock;
    std::vector<double> partial(blocks, 0.0);
    parallel_for(blocks, [&](std::size_t b) {
        double s = 0.0;
        const std::size_t end = std::min(terms.size(), (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < end; ++i) {
            if (!mask || (*mask)[i]) s += terms[i];
        }
        partial[b] = s;
    });
    return tree_sum(std::move(partial));
}

}  // namespace

OneLevelDensity one_level_density(std::uint64_t m, const TestFunction& tf, const PrimeTable& primes) {
    const Setup s = prepare(m, tf, primes);
    const CharacterTable table(m);
    DensityTerms t{std::vector<double>(s.count), std::vector<double>(s.count), std::vector<double>(s.count),
                   std::vector<char>(s.count)};
    parallel_for(s.count, [&](std::size_t i) { fill_term(s, table, primes, i, t); });
    return assemble(s, table, t, block_tree_sum(t.first, nullptr), block_tree_sum(t.second, nullptr),
                    block_tree_sum(t.first_weight, nullptr), block_tree_sum(t.first_weight, &t.equiv_one));
}

OneLevelDensity reference::one_level_density(std::uint64_t m, const TestFunction& tf, const PrimeTable& primes) {
    const Setup s = prepare(m, tf, primes);
    const CharacterTable table(m);
    DensityTerms t{std::vector<double>(s.count), std::vector<double>(s.count), std::vector<double>(s.count),
                   std::vector<char>(s.count)};
    double first = 0.0, second = 0.0, all = 0.0, equiv = 0.0;
    for (std::size_t i = 0; i < s.count; ++i) {
        fill_term(s, table, primes, i, t);
        first += t.first[i];
        second += t.second[i];
        all += t.first_weight[i];
        if (t.equiv_one[i]) equiv += t.first_weight[i];
    }
    return assemble(s, table, t, first, second, all, equiv);
}

}  // namespace spectra
