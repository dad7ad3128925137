#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "quadrep/gauss.hpp"
#include "quadrep/ideals.hpp"

namespace quadrep {

/// N_b(I, m): number of lambda in I/bI with N(lambda)/N(I) = m mod b.
struct RepQuery {
    FracIdeal ideal;
    std::int64_t m = 0;
    std::int64_t b = 1;
};

/// Memoized genus fingerprints, keyed by (D, ideal text).
///
/// Concurrent readers share the lock; a racing double insert stores the same
/// value twice, which is harmless.
class GenusCache {
public:
    GenusFingerprint get(const FracIdeal& I, const Limits& lim = {})
    {
        const std::string key = std::to_string(I.disc().value()) + "|" + format_ideal(I);
        {
            std::shared_lock lock(mutex_);
            if (auto it = cache_.find(key); it != cache_.end())
                return it->second;
        }
        GenusFingerprint fp = genus_fingerprint(I, lim);
        std::unique_lock lock(mutex_);
        cache_.emplace(key, fp);
        return fp;
    }

    std::size_t size() const
    {
        std::shared_lock lock(mutex_);
        return cache_.size();
    }

    static GenusCache& global()
    {
        static GenusCache instance;
        return instance;
    }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, GenusFingerprint> cache_;
};

inline std::int64_t rep_count_bruteforce(const RepQuery& q, const Limits& lim = {})
{
    if (q.b < 1)
        throw DomainError("rep_count_bruteforce: b must be positive");
    return residue_norm_profile(q.ideal, q.b, lim).at(q.m);
}

/// N_{p^beta}(I, m) by the closed case table.
///
/// nu = min(nu_p(m), beta), and nu = beta when p^beta | m (this covers m = 0).
/// na_sign = (N(I)/p) for an ideal of the genus coprime to p; it is required
/// exactly when p ramifies.
inline std::int64_t rep_count_prime_power(const Discriminant& D, std::int64_t p, int beta, std::int64_t m,
                                          std::optional<Sign> na_sign)
{
    if (!is_prime(p))
        throw DomainError("rep_count_prime_power: p must be prime");
    if (beta < 0)
        throw DomainError("rep_count_prime_power: beta must be nonnegative");
    const Sign chi = D.chi(p);
    if (chi.is_zero() && !na_sign)
        throw PreconditionError("rep_count_prime_power: p = " + std::to_string(p) +
                                " is ramified; need a coprime genus representative to supply (N(a)/p)");
    if (beta == 0)
        return 1;
    const std::int64_t b = ipow(p, beta);
    const int nu = (floor_mod(m, b) == 0) ? beta : valuation(m, p);
    const std::int64_t pb = b;
    const std::int64_t pb1 = b / p;

    if (chi == Sign::plus()) {
        if (nu < beta)
            return checked_mul(checked_mul(nu + 1, p - 1), pb1);
        return checked_mul(beta + 1, pb) - checked_mul(beta, pb1);
    }
    if (chi == Sign::minus()) {
        if (nu < beta)
            return (nu % 2 == 0) ? checked_mul(p + 1, pb1) : 0;
        return (beta % 2 == 0) ? pb : pb1;
    }
    if (nu == beta)
        return pb;
    const std::int64_t m0 = m / ipow(p, nu);
    const std::int64_t D0 = D.value() / p;
    const Sign s = legendre(-D0, p).pow(nu) * legendre(m0, p) * *na_sign;
    return checked_mul(1 + s.value(), pb);
}

/// (N(c)/p) for the genus of I, using a coprime representative when needed.
inline Sign ramified_norm_sign(const FracIdeal& I, std::int64_t p, const Limits& lim = {},
                               GenusCache& cache = GenusCache::global())
{
    if (coprime_to_prime(I, p))
        return rational_legendre(ideal_norm(I), p);
    return cache.get(I, lim).at(p);
}

/// N_b(I, m) assembled multiplicatively over p^beta || b.
inline std::int64_t rep_count(const RepQuery& q, const Limits& lim = {}, GenusCache& cache = GenusCache::global())
{
    if (q.b < 1)
        throw DomainError("rep_count: b must be positive");
    const Discriminant& D = q.ideal.disc();
    std::int64_t n = 1;
    for (const auto& pp : factorize(q.b, lim)) {
        std::optional<Sign> na;
        if (D.ramifies(pp.prime))
            na = ramified_norm_sign(q.ideal, pp.prime, lim, cache);
        n = checked_mul(n, rep_count_prime_power(D, pp.prime, pp.exponent, q.m, na));
        if (n == 0)
            break;
    }
    return n;
}

/// G^b(I, m, 0) = N_{bD}(I, m) / D.
inline std::int64_t g_rep(const FracIdeal& I, std::int64_t m, std::int64_t b, const Limits& lim = {},
                          GenusCache& cache = GenusCache::global())
{
    if (b < 1)
        throw DomainError("g_rep: b must be positive");
    const std::int64_t D = I.disc().value();
    const std::int64_t n = rep_count(RepQuery{I, m, checked_mul(b, D)}, lim, cache);
    if (n % D != 0)
        throw ConsistencyError("g_rep: N_{bD} = " + std::to_string(n) + " is not divisible by D = " +
                               std::to_string(D));
    return n / D;
}

/// Same as g_rep but counted by enumeration at modulus bD.
inline std::int64_t g_rep_bruteforce(const FracIdeal& I, std::int64_t m, std::int64_t b, const Limits& lim = {})
{
    const std::int64_t D = I.disc().value();
    const std::int64_t n = rep_count_bruteforce(RepQuery{I, m, checked_mul(b, D)}, lim);
    if (n % D != 0)
        throw ConsistencyError("g_rep_bruteforce: N_{bD} not divisible by D");
    return n / D;
}

struct DftReconstruction {
    std::int64_t value = 0;
    double residual = 0.0;  ///< distance of the complex sum from the integer value
};

/// G_b(I, a) for every a in Z/bZ as complex numbers, from direct exponent vectors.
inline std::vector<std::complex<double>> gauss_table(const NormProfile& profile)
{
    const std::int64_t b = profile.modulus;
    const auto w = roots_of_unity(b);
    std::vector<std::complex<double>> table(static_cast<std::size_t>(b));
    for (std::int64_t a = 0; a < b; ++a) {
        std::complex<double> sum{0.0, 0.0};
        for (std::int64_t r = 0; r < b; ++r) {
            const std::int64_t c = profile.counts[static_cast<std::size_t>(r)];
            if (c != 0)
                sum += static_cast<double>(c) * w[static_cast<std::size_t>(mul_mod(a, r, b))];
        }
        table[static_cast<std::size_t>(a)] = sum;
    }
    return table;
}

/// (1/b) sum_a G_b(I, a) e(-a m / b), rounded; throws if the residual exceeds tol.
inline DftReconstruction dft_reconstruct(const std::vector<std::complex<double>>& table, std::int64_t m,
                                         double tol = 1e-6)
{
    const auto b = static_cast<std::int64_t>(table.size());
    const auto w = roots_of_unity(b);
    std::complex<double> sum{0.0, 0.0};
    for (std::int64_t a = 0; a < b; ++a) {
        const std::int64_t k = floor_mod(-mul_mod(a, m, b), b);
        sum += table[static_cast<std::size_t>(a)] * w[static_cast<std::size_t>(k)];
    }
    sum /= static_cast<double>(b);
    const double rounded = std::round(sum.real());
    const double residual = std::abs(sum - std::complex<double>(rounded, 0.0));
    if (residual > tol)
        throw ConsistencyError("dft_reconstruct: residual " + std::to_string(residual) + " exceeds tolerance");
    return {static_cast<std::int64_t>(rounded), residual};
}

/// N_{p^beta}(I, m) reconstructed from the Gauss sums G_{p^beta}(I, a).
inline std::int64_t rep_from_gauss_dft(const FracIdeal& I, std::int64_t m, std::int64_t p, int beta,
                                       const Limits& lim = {})
{
    if (!is_prime(p))
        throw DomainError("rep_from_gauss_dft: p must be prime");
    const std::int64_t b = ipow(p, beta);
    return dft_reconstruct(gauss_table(residue_norm_profile(I, b, lim)), m).value;
}

} // namespace quadrep
