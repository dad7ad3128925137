#pragma once

// Slow reference implementations written straight from the definitions.
// They share no code with the library beyond plain integer types.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle {

inline std::int64_t mod(std::int64_t a, std::int64_t m)
{
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

/// Legendre symbol by exhaustive search for a square root.
inline int legendre(std::int64_t a, std::int64_t p)
{
    const std::int64_t r = mod(a, p);
    if (r == 0)
        return 0;
    for (std::int64_t x = 1; x < p; ++x)
        if (x * x % p == r)
            return 1;
    return -1;
}

/// Kronecker symbol (a/n) from the prime factorization of n, with (a/2) from a mod 8
/// and (a/-1) = sign(a).
inline int kronecker(std::int64_t a, std::int64_t n)
{
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            result = -result;
    }
    for (std::int64_t p = 2; n > 1; ++p) {
        while (n % p == 0) {
            n /= p;
            int s;
            if (p == 2) {
                const std::int64_t r = mod(a, 8);
                s = (r % 2 == 0) ? 0 : (r == 1 || r == 7) ? 1 : -1;
            } else {
                s = legendre(a, p);
            }
            result *= s;
        }
    }
    return result;
}

/// The integral binary quadratic form a x^2 + b x y + c y^2 attached to [a, b].
struct Form {
    std::int64_t a, b, c;
    std::int64_t operator()(std::int64_t x, std::int64_t y) const { return a * x * x + b * x * y + c * y * y; }
};

inline Form form_of(std::int64_t D, std::int64_t a, std::int64_t b) { return {a, b, (b * b - D) / (4 * a)}; }

/// #{(x, y) mod n : f(x, y) = m mod n}.
inline std::int64_t count(const Form& f, std::int64_t m, std::int64_t n)
{
    std::int64_t hits = 0;
    for (std::int64_t x = 0; x < n; ++x)
        for (std::int64_t y = 0; y < n; ++y)
            if (mod(f(x, y) - m, n) == 0)
                ++hits;
    return hits;
}

/// sum over (x, y) mod n of e(a f(x, y) / n).
inline std::complex<double> gauss(const Form& f, std::int64_t a, std::int64_t n)
{
    std::complex<double> s{0.0, 0.0};
    for (std::int64_t x = 0; x < n; ++x)
        for (std::int64_t y = 0; y < n; ++y) {
            const double t = 2.0 * std::numbers::pi * static_cast<double>(mod(a * f(x, y), n)) / static_cast<double>(n);
            s += std::complex<double>(std::cos(t), std::sin(t));
        }
    return s;
}

/// sigma(a, m, s) from its definition, with chi_{D(p)}(N(a)) supplied per prime.
inline double sigma(const std::vector<std::pair<std::int64_t, int>>& fp, std::int64_t m, double s)
{
    const std::int64_t am = m < 0 ? -m : m;
    double total = 0.0;
    for (std::int64_t d = 1; d <= am; ++d) {
        if (am % d != 0)
            continue;
        double coeff = 1.0;
        for (const auto& [p, na] : fp) {
            const std::int64_t Dp = (p % 4 == 1) ? p : -p;
            coeff *= kronecker(Dp, d) + na * kronecker(Dp, m / d);
        }
        total += coeff * std::pow(static_cast<double>(d), s);
    }
    return std::pow(static_cast<double>(am), (1.0 - s) / 2.0) * total;
}

inline double zeta(double s, std::int64_t terms)
{
    double z = 0.0;
    for (std::int64_t n = terms; n >= 1; --n)
        z += std::pow(static_cast<double>(n), -s);
    return z;
}

} // namespace oracle
