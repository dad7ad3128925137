#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "quadrep/arith.hpp"
#include "quadrep/ideals.hpp"

namespace quadrep {

/// Exact carrier of an exponential sum sum_t counts[t] * e(t/b).
struct ExponentVector {
    std::int64_t modulus = 1;
    std::vector<std::int64_t> counts;

    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
};

/// Closed value of a Gauss sum: coeff (rational kind) or coeff * eps_p * sqrt(p)
/// (ramified kind).
struct ExactGaussValue {
    enum class Kind { rational, ramified };
    Kind kind = Kind::rational;
    Rational coeff{0};
    std::int64_t p = 1;  ///< prime (or odd modulus c for classical sums); ramified kind only

    static ExactGaussValue rational_value(Rational c) { return {Kind::rational, std::move(c), 1}; }
    static ExactGaussValue sqrt_value(Rational c, std::int64_t p) { return {Kind::ramified, std::move(c), p}; }

    std::complex<double> to_complex() const
    {
        const double c = static_cast<double>(coeff);
        if (kind == Kind::rational)
            return {c, 0.0};
        return c * std::sqrt(static_cast<double>(p)) * quadrep::to_complex(eps(p));
    }

    friend bool operator==(const ExactGaussValue&, const ExactGaussValue&) = default;
};

inline const char* to_string(ExactGaussValue::Kind k)
{
    return k == ExactGaussValue::Kind::rational ? "rational" : "ramified";
}

/// e(t/b) for t = 0..b-1.
inline std::vector<std::complex<double>> roots_of_unity(std::int64_t b)
{
    std::vector<std::complex<double>> w(static_cast<std::size_t>(b));
    for (std::int64_t t = 0; t < b; ++t) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(b);
        w[static_cast<std::size_t>(t)] = {std::cos(angle), std::sin(angle)};
    }
    return w;
}

inline std::complex<double> eval_complex(const ExponentVector& v)
{
    const auto w = roots_of_unity(v.modulus);
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t t = 0; t < v.counts.size(); ++t)
        if (v.counts[t] != 0)
            sum += static_cast<double>(v.counts[t]) * w[t];
    return sum;
}

/// G_b(I, a) from a norm profile of I mod b: residue r contributes to a*r mod b.
inline ExponentVector gauss_from_profile(const NormProfile& profile, std::int64_t a)
{
    const std::int64_t b = profile.modulus;
    ExponentVector v{b, std::vector<std::int64_t>(static_cast<std::size_t>(b), 0)};
    for (std::int64_t r = 0; r < b; ++r)
        v.counts[static_cast<std::size_t>(mul_mod(a, r, b))] += profile.counts[static_cast<std::size_t>(r)];
    return v;
}

/// Direct evaluation of G_b(I, a) = sum over lambda in I/bI of e(a N(lambda) / (b N(I))).
inline ExponentVector gauss_direct(const FracIdeal& I, std::int64_t a, std::int64_t b, const Limits& lim = {})
{
    return gauss_from_profile(residue_norm_profile(I, b, lim), a);
}

/// Closed form of G_{p^beta}(I, a).
///
/// With a = a0 p^alpha, alpha = min(nu_p(a), beta):
///   alpha = beta        -> p^(2 beta)
///   p does not divide D -> (chi_D(p) p)^(alpha + beta)
///   p | D, alpha < beta -> eps_p p^(alpha+beta+1/2) (a0 N(I)/p) (-D0/p)^(alpha+beta+1), D0 = D/p.
/// The ramified case needs I coprime to p.
inline ExactGaussValue gauss_closed(const FracIdeal& I, std::int64_t a, std::int64_t p, int beta)
{
    if (!is_prime(p))
        throw DomainError("gauss_closed: p must be prime");
    if (beta < 0)
        throw DomainError("gauss_closed: beta must be nonnegative");
    const Discriminant& D = I.disc();
    const std::int64_t b = ipow(p, beta);
    const int alpha = (floor_mod(a, b) == 0) ? beta : valuation(a, p);
    if (alpha == beta)
        return ExactGaussValue::rational_value(Rational(ipow(p, 2 * beta)));

    const Sign chi = D.chi(p);
    if (!chi.is_zero()) {
        const std::int64_t mag = ipow(p, alpha + beta);
        return ExactGaussValue::rational_value(Rational(chi.pow(alpha + beta).value() * mag));
    }

    if (!coprime_to_prime(I, p))
        throw PreconditionError("gauss_closed: ideal is not coprime to the ramified prime " + std::to_string(p) +
                                "; replace it by coprime_genus_representative first");
    const std::int64_t a0 = a / ipow(p, alpha);
    const std::int64_t D0 = D.value() / p;
    const Sign s = legendre(a0, p) * rational_legendre(ideal_norm(I), p) * legendre(-D0, p).pow(alpha + beta + 1);
    return ExactGaussValue::sqrt_value(Rational(s.value() * ipow(p, alpha + beta)), p);
}

struct ClassicalGauss {
    ExactGaussValue closed;
    ExponentVector direct;
};

/// sum_{x mod c} e(a x^2 / c) = eps_c sqrt(c) (a/c) for odd c > 0, gcd(a, c) = 1.
inline ClassicalGauss classical_gauss(std::int64_t a, std::int64_t c)
{
    if (c <= 0 || c % 2 == 0)
        throw DomainError("classical_gauss: c must be odd and positive");
    if (std::gcd(a, c) != 1)
        throw DomainError("classical_gauss: gcd(a, c) must be 1");
    ExponentVector v{c, std::vector<std::int64_t>(static_cast<std::size_t>(c), 0)};
    for (std::int64_t x = 0; x < c; ++x)
        ++v.counts[static_cast<std::size_t>(mul_mod(a, mul_mod(x, x, c), c))];
    return {ExactGaussValue::sqrt_value(Rational(kronecker(a, c).value()), c), std::move(v)};
}

/// sum_{a mod p^r} (a/p) e(a c / p^r), evaluated directly.
inline std::complex<double> twisted_sum_direct(std::int64_t p, int r, std::int64_t c)
{
    if (p == 2 || !is_prime(p))
        throw DomainError("twisted_sum_direct: p must be an odd prime");
    if (r < 1)
        throw DomainError("twisted_sum_direct: r must be positive");
    if (c % p == 0)
        throw DomainError("twisted_sum_direct: c must be coprime to p");
    const std::int64_t q = ipow(p, r);
    const auto w = roots_of_unity(q);
    std::complex<double> sum{0.0, 0.0};
    for (std::int64_t a = 0; a < q; ++a) {
        const int chi = legendre(a, p).value();
        if (chi != 0)
            sum += static_cast<double>(chi) * w[static_cast<std::size_t>(mul_mod(a, c, q))];
    }
    return sum;
}

} // namespace quadrep
