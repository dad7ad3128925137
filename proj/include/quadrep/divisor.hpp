#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "quadrep/arith.hpp"
#include "quadrep/ideals.hpp"

namespace quadrep {

/// D = D1 * D2 with D1, D2 products of prime discriminants D(p).
struct DiscDecomposition {
    std::int64_t D1 = 1;
    std::int64_t D2 = 1;
    friend bool operator==(const DiscDecomposition&, const DiscDecomposition&) = default;
};

/// Input of the generalized divisor sum sigma(a, m, s). The genus of a enters
/// only through the fingerprint.
struct SigmaQuery {
    GenusFingerprint fingerprint;
    std::int64_t m = 1;
    double s = 0.0;
};

/// D(p) in {p, -p} with D(p) = 1 mod 4.
inline std::int64_t dp_assign(std::int64_t D, std::int64_t p)
{
    if (p < 2 || D % p != 0)
        throw DomainError("dp_assign: " + std::to_string(p) + " does not divide " + std::to_string(D));
    return (p % 4 == 1) ? p : -p;
}

/// All 2^omega(D) ordered decompositions, D1 running over subset products in
/// binary order of the prime list.
inline std::vector<DiscDecomposition> disc_decompositions(const Discriminant& D)
{
    const auto ps = D.ramified_primes();
    std::vector<DiscDecomposition> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ps.size()); ++mask) {
        std::int64_t D1 = 1;
        for (std::size_t i = 0; i < ps.size(); ++i)
            if ((mask >> i) & 1)
                D1 *= dp_assign(D.value(), ps[i]);
        out.push_back({D1, D.value() / D1});
    }
    return out;
}

namespace detail {

inline void require_nonzero_m(std::int64_t m, const char* who)
{
    if (m == 0)
        throw DomainError(std::string(who) + ": m must be nonzero (use the m = 0 closed form)");
}

/// m_p = p^nu_p(m).
inline std::int64_t p_part(std::int64_t m, std::int64_t p) { return ipow(p, valuation(m, p)); }

/// chi_{D'}(N(a)) for D' a product of prime discriminants, read off the fingerprint.
inline Sign fingerprint_char(const GenusFingerprint& fp, std::int64_t Dprime)
{
    Sign s = Sign::plus();
    for (const auto& [p, sign] : fp.signs)
        if (Dprime % p == 0)
            s = s * sign;
    return s;
}

/// prod over p | m, p not dividing D, of (1 - (chi_D(p) p^s)^(nu+1)) / (1 - chi_D(p) p^s);
/// the factor is its limit nu+1 when chi_D(p) p^s = 1.
inline long double unramified_product(std::int64_t D, std::int64_t m, long double s, const Limits& lim)
{
    long double prod = 1.0L;
    for (const auto& pp : factorize(m, lim)) {
        if (D % pp.prime == 0)
            continue;
        const int chi = kronecker(D, pp.prime).value();
        const long double x = chi * std::pow(static_cast<long double>(pp.prime), s);
        if (chi == 1 && s == 0.0L)
            prod *= static_cast<long double>(pp.exponent + 1);
        else
            prod *= (1.0L - std::pow(x, pp.exponent + 1)) / (1.0L - x);
    }
    return prod;
}

inline long double abs_m_power(std::int64_t m, long double e)
{
    return std::pow(static_cast<long double>(m < 0 ? -m : m), e);
}

} // namespace detail

/// sigma(a, m, s) = |m|^((1-s)/2) sum_{d | m, d > 0} d^s prod_{p | D} (chi_{D(p)}(d) + chi_{D(p)}(N(a) m/d)).
inline double sigma_def(const SigmaQuery& q, const Limits& lim = {})
{
    detail::require_nonzero_m(q.m, "sigma_def");
    const std::int64_t D = q.fingerprint.D;
    const long double s = q.s;
    long double total = 0.0L;
    for (std::int64_t d : divisors(q.m, lim)) {
        std::int64_t coeff = 1;
        for (const auto& [p, na] : q.fingerprint.signs) {
            const std::int64_t Dp = dp_assign(D, p);
            coeff *= kronecker(Dp, d).value() + na.value() * kronecker(Dp, q.m / d).value();
        }
        if (coeff != 0)
            total += static_cast<long double>(coeff) * std::pow(static_cast<long double>(d), s);
    }
    return static_cast<double>(detail::abs_m_power(q.m, (1.0L - s) / 2.0L) * total);
}

/// sum_{D1 D2 = D} chi_{D1}(m_{D2}) chi_{D2}(N(a) m0 m_{D1}) m_{D2}^s with m0 the signed
/// part of m prime to D. Terms sharing m_{D2} are combined exactly first.
inline double d_factor_decomp_sum(const GenusFingerprint& fp, std::int64_t m, double s, const Limits& lim = {})
{
    detail::require_nonzero_m(m, "d_factor_decomp_sum");
    const Discriminant D(fp.D, lim);
    std::map<std::int64_t, std::int64_t> by_mD2;
    for (const auto& dec : disc_decompositions(D)) {
        std::int64_t mD1 = 1;
        std::int64_t mD2 = 1;
        for (std::int64_t p : D.ramified_primes()) {
            const std::int64_t mp = detail::p_part(m, p);
            (dec.D1 % p == 0 ? mD1 : mD2) *= mp;
        }
        const std::int64_t m0 = m / (mD1 * mD2);
        const Sign term = kronecker(dec.D1, mD2) * detail::fingerprint_char(fp, dec.D2) *
                          kronecker(dec.D2, checked_mul(m0, mD1));
        by_mD2[mD2] += term.value();
    }
    long double total = 0.0L;
    for (const auto& [mD2, coeff] : by_mD2)
        if (coeff != 0)
            total += static_cast<long double>(coeff) * std::pow(static_cast<long double>(mD2), static_cast<long double>(s));
    return static_cast<double>(total);
}

/// prod_{p | D} (1 + ((-D/p)/p)^nu_p(m) (N(a) m/m_p / p) m_p^s).
inline double d_factor_product(const GenusFingerprint& fp, std::int64_t m, double s)
{
    detail::require_nonzero_m(m, "d_factor_product");
    long double prod = 1.0L;
    for (const auto& [p, na] : fp.signs) {
        const std::int64_t mp = detail::p_part(m, p);
        const int nu = valuation(m, p);
        const Sign sgn = legendre(-(fp.D / p), p).pow(nu) * na * legendre(m / mp, p);
        prod *= 1.0L + sgn.value() * std::pow(static_cast<long double>(mp), static_cast<long double>(s));
    }
    return static_cast<double>(prod);
}

/// Decomposition-sum form of sigma, rescaled by |m|^((1-s)/2).
inline double sigma_decomp(const SigmaQuery& q, const Limits& lim = {})
{
    detail::require_nonzero_m(q.m, "sigma_decomp");
    const long double s = q.s;
    const long double inner = d_factor_decomp_sum(q.fingerprint, q.m, q.s, lim);
    if (inner == 0.0L)
        return 0.0;
    return static_cast<double>(detail::abs_m_power(q.m, (1.0L - s) / 2.0L) * inner *
                               detail::unramified_product(q.fingerprint.D, q.m, s, lim));
}

/// Full Euler product form of sigma.
inline double sigma_euler(const SigmaQuery& q, const Limits& lim = {})
{
    detail::require_nonzero_m(q.m, "sigma_euler");
    const long double s = q.s;
    const long double ram = d_factor_product(q.fingerprint, q.m, q.s);
    if (ram == 0.0L)
        return 0.0;
    return static_cast<double>(detail::abs_m_power(q.m, (1.0L - s) / 2.0L) * ram *
                               detail::unramified_product(q.fingerprint.D, q.m, s, lim));
}

/// Both sides of
///   prod_{p | D2} ((-D/p)/p)^nu_p(m) (N(a) m/m_p / p) = chi_{D1}(m_{D2}) chi_{D2}(N(a) m/m_{D2}).
inline std::pair<Sign, Sign> ramified_sign_product(const GenusFingerprint& fp, std::int64_t D2, std::int64_t m)
{
    detail::require_nonzero_m(m, "ramified_sign_product");
    const std::int64_t D = fp.D;
    if (D2 == 0 || D % D2 != 0)
        throw DomainError("ramified_sign_product: D2 does not divide D");
    std::int64_t check = 1;
    for (const auto& [p, na] : fp.signs)
        if (D2 % p == 0)
            check *= dp_assign(D, p);
    if (check != D2)
        throw DomainError("ramified_sign_product: " + std::to_string(D2) + " is not a discriminant divisor of " +
                          std::to_string(D));
    const std::int64_t D1 = D / D2;

    Sign left = Sign::plus();
    std::int64_t mD2 = 1;
    for (const auto& [p, na] : fp.signs) {
        if (D2 % p != 0)
            continue;
        const std::int64_t mp = detail::p_part(m, p);
        mD2 *= mp;
        left = left * legendre(-(D / p), p).pow(valuation(m, p)) * na * legendre(m / mp, p);
    }
    const Sign right = kronecker(D1, mD2) * detail::fingerprint_char(fp, D2) * kronecker(D2, m / mD2);
    return {left, right};
}

/// sigma(a, m, .) is identically zero iff chi_{D(p)}(N(a) m) = -1 for some p | D.
/// A prime p | m gives chi_{D(p)}(N(a) m) = 0 and never triggers vanishing.
inline bool sigma_vanishes(const GenusFingerprint& fp, std::int64_t m)
{
    detail::require_nonzero_m(m, "sigma_vanishes");
    for (const auto& [p, na] : fp.signs)
        if (na.value() * kronecker(dp_assign(fp.D, p), m).value() == -1)
            return true;
    return false;
}

} // namespace quadrep
