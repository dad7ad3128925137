#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "quadrep/error.hpp"

namespace quadrep {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Size limits shared by every bounded operation.
struct Limits {
    std::int64_t max_factor = 1'000'000'000'000;  ///< largest |n| handed to factorize
    std::int64_t max_enum_b = 10'000;             ///< largest modulus for residue enumeration
    int max_search_radius = 200;                  ///< box radius for representative search
};

// ---------------------------------------------------------------------------
// Checked 64-bit helpers

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("int64 addition overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("int64 multiplication overflow");
    return r;
}

inline std::int64_t ipow(std::int64_t base, int exp)
{
    if (exp < 0)
        throw DomainError("ipow: negative exponent");
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i)
        r = checked_mul(r, base);
    return r;
}

/// Representative of a mod m in [0, m).
inline std::int64_t floor_mod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m)
{
    return static_cast<std::int64_t>(static_cast<__int128>(floor_mod(a, m)) * floor_mod(b, m) % m);
}

inline std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m)
{
    std::int64_t r = 1 % m;
    std::int64_t b = floor_mod(base, m);
    while (exp > 0) {
        if (exp & 1)
            r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    return r;
}

inline std::int64_t floor_mod(const Integer& a, std::int64_t m)
{
    Integer r = a % m;
    if (r < 0)
        r += m;
    return static_cast<std::int64_t>(r);
}

inline std::int64_t to_int64(const Integer& x)
{
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        throw OverflowError("value does not fit in int64: " + x.str());
    return static_cast<std::int64_t>(x);
}

inline std::string to_string(const Rational& x)
{
    const Integer& n = boost::multiprecision::numerator(x);
    const Integer& d = boost::multiprecision::denominator(x);
    return d == 1 ? n.str() : n.str() + "/" + d.str();
}

// ---------------------------------------------------------------------------
// Sign

/// A value in {-1, 0, +1}: character values, Legendre symbols, Moebius.
class Sign {
public:
    constexpr Sign() = default;
    constexpr explicit Sign(int v) : v_(v)
    {
        if (v < -1 || v > 1)
            throw DomainError("Sign out of range: " + std::to_string(v));
    }

    static constexpr Sign plus() { return Sign(1); }
    static constexpr Sign minus() { return Sign(-1); }
    static constexpr Sign zero() { return Sign(0); }

    constexpr int value() const { return v_; }
    constexpr bool is_zero() const { return v_ == 0; }

    constexpr Sign pow(std::int64_t e) const
    {
        if (e < 0)
            throw DomainError("Sign::pow: negative exponent");
        if (e == 0)
            return plus();
        if (v_ == -1)
            return (e % 2 == 0) ? plus() : minus();
        return *this;
    }

    friend constexpr Sign operator*(Sign a, Sign b) { return Sign(a.v_ * b.v_); }
    friend constexpr Sign operator-(Sign a) { return Sign(-a.v_); }
    friend constexpr bool operator==(Sign, Sign) = default;
    friend std::ostream& operator<<(std::ostream& os, Sign s) { return os << s.v_; }

private:
    int v_ = 1;
};

// ---------------------------------------------------------------------------
// Kronecker symbol

/// Kronecker symbol (a/n) for arbitrary integers.
///
/// Conventions: (a/0) = 1 if a = +-1 else 0; (a/-1) = -1 if a < 0 else 1;
/// (a/2) = 0 for even a, +1 for a = +-1 mod 8, -1 for a = +-3 mod 8.
/// For odd positive n it is the Jacobi symbol.
inline Sign kronecker(std::int64_t a, std::int64_t n)
{
    if (n == 0)
        return Sign(a == 1 || a == -1 ? 1 : 0);

    int result = 1;
    if (n < 0) {
        if (n == std::numeric_limits<std::int64_t>::min())
            throw OverflowError("kronecker: n = INT64_MIN");
        n = -n;
        if (a < 0)
            result = -1;
    }

    int twos = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++twos;
    }
    if (twos > 0) {
        if ((a & 1) == 0)
            return Sign::zero();
        const std::int64_t a8 = floor_mod(a, 8);
        if ((twos & 1) && (a8 == 3 || a8 == 5))
            result = -result;
    }

    // Jacobi symbol (a/n), n odd positive.
    std::int64_t x = floor_mod(a, n);
    std::int64_t y = n;
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            const std::int64_t y8 = y & 7;
            if (y8 == 3 || y8 == 5)
                result = -result;
        }
        std::swap(x, y);
        if ((x & 3) == 3 && (y & 3) == 3)
            result = -result;
        x %= y;
    }
    return y == 1 ? Sign(result) : Sign::zero();
}

/// Legendre symbol for an odd prime p (no primality check).
inline Sign legendre(std::int64_t a, std::int64_t p) { return kronecker(floor_mod(a, p), p); }

// ---------------------------------------------------------------------------
// The unit eps_c

enum class FourthRoot { one, i };

/// eps_c: 1 if c = 1 mod 4, i if c = 3 mod 4 (c odd and positive).
inline FourthRoot eps(std::int64_t c)
{
    if (c <= 0 || c % 2 == 0)
        throw DomainError("eps: c must be odd and positive, got " + std::to_string(c));
    return (c % 4 == 1) ? FourthRoot::one : FourthRoot::i;
}

inline std::complex<double> to_complex(FourthRoot u)
{
    return u == FourthRoot::one ? std::complex<double>(1.0, 0.0) : std::complex<double>(0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Factorization

struct PrimePower {
    std::int64_t prime;
    int exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of |n|, primes strictly increasing.
class Factorization {
public:
    Factorization() = default;
    explicit Factorization(std::vector<PrimePower> factors) : factors_(std::move(factors)) {}

    const std::vector<PrimePower>& factors() const { return factors_; }
    auto begin() const { return factors_.begin(); }
    auto end() const { return factors_.end(); }
    std::size_t size() const { return factors_.size(); }
    bool empty() const { return factors_.empty(); }

    std::vector<std::int64_t> primes() const
    {
        std::vector<std::int64_t> ps;
        ps.reserve(factors_.size());
        for (const auto& f : factors_)
            ps.push_back(f.prime);
        return ps;
    }

    int exponent_of(std::int64_t p) const
    {
        for (const auto& f : factors_)
            if (f.prime == p)
                return f.exponent;
        return 0;
    }

    std::int64_t value() const
    {
        std::int64_t v = 1;
        for (const auto& f : factors_)
            v = checked_mul(v, ipow(f.prime, f.exponent));
        return v;
    }

    friend bool operator==(const Factorization&, const Factorization&) = default;

private:
    std::vector<PrimePower> factors_;
};

inline bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    if (n < 4)
        return true;
    if (n % 2 == 0 || n % 3 == 0)
        return false;
    for (std::int64_t d = 5; d <= n / d; d += 6)
        if (n % d == 0 || n % (d + 2) == 0)
            return false;
    return true;
}

/// Trial-division factorization of |n|. The sign is discarded.
inline Factorization factorize(std::int64_t n, const Limits& lim = {})
{
    if (n == 0)
        throw DomainError("factorize: n must be nonzero");
    if (n == std::numeric_limits<std::int64_t>::min() || (n < 0 ? -n : n) > lim.max_factor)
        throw BoundExceeded("factorization too large: |n| = " + std::to_string(n) + " exceeds " +
                            std::to_string(lim.max_factor));
    std::uint64_t m = static_cast<std::uint64_t>(n < 0 ? -n : n);
    std::vector<PrimePower> out;
    auto take = [&](std::uint64_t p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e > 0)
            out.push_back({static_cast<std::int64_t>(p), e});
    };
    take(2);
    take(3);
    for (std::uint64_t d = 5; d <= m / d; d += 6) {
        take(d);
        take(d + 2);
    }
    if (m > 1)
        out.push_back({static_cast<std::int64_t>(m), 1});
    return Factorization(std::move(out));
}

// ---------------------------------------------------------------------------
// Valuations

inline int valuation(std::int64_t n, std::int64_t p)
{
    if (n == 0)
        throw DomainError("valuation: argument must be nonzero");
    if (p < 2)
        throw DomainError("valuation: p must be a prime");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline int valuation(const Integer& n, std::int64_t p)
{
    if (n == 0)
        throw DomainError("valuation: argument must be nonzero");
    if (p < 2)
        throw DomainError("valuation: p must be a prime");
    Integer x = n;
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

/// p-adic valuation of a nonzero rational (negative allowed).
inline int valuation(const Rational& x, std::int64_t p)
{
    if (x == 0)
        throw DomainError("valuation: argument must be nonzero");
    return valuation(boost::multiprecision::numerator(x), p) -
           valuation(boost::multiprecision::denominator(x), p);
}

/// Legendre symbol of a p-unit rational, read as num * den^-1 in (Z/pZ)^x.
inline Sign rational_legendre(const Rational& x, std::int64_t p)
{
    if (x == 0 || valuation(x, p) != 0)
        throw DomainError("rational_legendre: " + to_string(x) + " is not a p-unit for p = " +
                          std::to_string(p));
    const std::int64_t num = floor_mod(boost::multiprecision::numerator(x), p);
    const std::int64_t den = floor_mod(boost::multiprecision::denominator(x), p);
    // (num * den^-1 / p) = (num/p)(den/p) because (den^-1/p) = (den/p).
    return legendre(num, p) * legendre(den, p);
}

inline Sign moebius(std::int64_t n, const Limits& lim = {})
{
    if (n <= 0)
        throw DomainError("moebius: n must be positive");
    const Factorization f = factorize(n, lim);
    for (const auto& pp : f)
        if (pp.exponent > 1)
            return Sign::zero();
    return (f.size() % 2 == 0) ? Sign::plus() : Sign::minus();
}

/// Positive divisors of |n| in increasing order.
inline std::vector<std::int64_t> divisors(std::int64_t n, const Limits& lim = {})
{
    std::vector<std::int64_t> ds{1};
    for (const auto& pp : factorize(n, lim)) {
        const std::size_t count = ds.size();
        std::int64_t q = 1;
        for (int e = 1; e <= pp.exponent; ++e) {
            q *= pp.prime;
            for (std::size_t i = 0; i < count; ++i)
                ds.push_back(ds[i] * q);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

} // namespace quadrep
