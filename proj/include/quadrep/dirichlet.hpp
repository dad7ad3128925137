#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "quadrep/divisor.hpp"
#include "quadrep/ideals.hpp"
#include "quadrep/repnum.hpp"

namespace quadrep {

/// Partial sum of a Dirichlet series with a claimed bound |true - value| <= tail_bound.
struct SeriesEval {
    double value = 0.0;
    std::int64_t truncation = 0;
    double tail_bound = 0.0;
};

namespace detail {

inline void require_s_above(double s, double bound, const char* who)
{
    if (!(s > bound))
        throw DomainError(std::string(who) + ": s must be > " + std::to_string(bound) + ", got " + std::to_string(s));
}

/// Smallest prime factor of every n <= limit (spf[0] = spf[1] = 0).
inline std::vector<std::int32_t> smallest_prime_factors(std::int64_t limit)
{
    std::vector<std::int32_t> spf(static_cast<std::size_t>(limit + 1), 0);
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (spf[static_cast<std::size_t>(i)] != 0)
            continue;
        for (std::int64_t j = i; j <= limit; j += i)
            if (spf[static_cast<std::size_t>(j)] == 0)
                spf[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(i);
    }
    return spf;
}

/// chi_D(n) for n = 0..D-1; chi_D is periodic mod D for odd fundamental D.
inline std::vector<int> character_table(std::int64_t D)
{
    std::vector<int> t(static_cast<std::size_t>(D));
    for (std::int64_t n = 0; n < D; ++n)
        t[static_cast<std::size_t>(n)] = kronecker(D, n).value();
    return t;
}

inline long double geometric_tail(long double q, int R)
{
    // sum_{r > R} (r + 1) q^r
    const long double qR1 = std::pow(q, R + 1);
    return qR1 * ((R + 2) - (R + 1) * q) / ((1 - q) * (1 - q));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Euler factors

/// sum_r N_{p^r}(a, m) p^{-rs} for p not dividing D, closed form with q = p^(1-s):
/// (p - chi q)/(p (1 - q)) * (1 - chi^(nu+1) q^(nu+1))/(1 - chi q); for m = 0 the
/// second fraction is 1/(1 - chi q).
inline double euler_factor_unramified(const Discriminant& D, std::int64_t p, std::int64_t m, double s)
{
    detail::require_s_above(s, 1.0, "euler_factor_unramified");
    if (D.ramifies(p))
        throw DomainError("euler_factor_unramified: p divides D");
    const long double chi = D.chi(p).value();
    const long double q = std::pow(static_cast<long double>(p), 1.0L - s);
    const long double first = (p - chi * q) / (p * (1.0L - q));
    if (m == 0)
        return static_cast<double>(first / (1.0L - chi * q));
    const int nu = valuation(m, p);
    return static_cast<double>(first * (1.0L - std::pow(chi * q, nu + 1)) / (1.0L - chi * q));
}

/// (1/p) sum_r N_{p^{r+1}}(a, m) p^{-rs} for p | D: (1 + sigma q^nu)/(1 - q) with
/// sigma = ((-D/p)/p)^nu (N(a) m0 / p); for m = 0 it is 1/(1 - q).
inline double euler_factor_ramified(const Discriminant& D, std::int64_t p, std::int64_t m, Sign na_sign, double s)
{
    detail::require_s_above(s, 1.0, "euler_factor_ramified");
    if (!D.ramifies(p))
        throw DomainError("euler_factor_ramified: p does not divide D");
    const long double q = std::pow(static_cast<long double>(p), 1.0L - s);
    if (m == 0)
        return static_cast<double>(1.0L / (1.0L - q));
    const int nu = valuation(m, p);
    const std::int64_t m0 = m / ipow(p, nu);
    const Sign sigma = legendre(-(D.value() / p), p).pow(nu) * legendre(m0, p) * na_sign;
    return static_cast<double>((1.0L + sigma.value() * std::pow(q, nu)) / (1.0L - q));
}

/// The same Euler factor summed term by term from the prime-power counts, with
/// R chosen so that p^(R(s-2)) > 1e10 and a geometric bound on the omitted tail.
inline SeriesEval euler_factor_direct(const Discriminant& D, std::int64_t p, std::int64_t m,
                                      std::optional<Sign> na_sign, double s)
{
    detail::require_s_above(s, 2.0, "euler_factor_direct");
    const long double lp = std::log(static_cast<long double>(p));
    const int R = std::max(1, static_cast<int>(std::ceil(10.0L * std::log(10.0L) / ((s - 2.0L) * lp))));
    const bool ram = D.ramifies(p);
    const long double q = std::pow(static_cast<long double>(p), 1.0L - s);
    long double sum = 0.0L;
    for (int r = R; r >= 0; --r) {
        const std::int64_t n = rep_count_prime_power(D, p, ram ? r + 1 : r, m, na_sign);
        const long double term = static_cast<long double>(n) * std::pow(static_cast<long double>(p), -r * static_cast<long double>(s));
        sum += ram ? term / p : term;
    }
    // Unramified N_{p^r} <= (r+1) p^r; ramified N_{p^{r+1}}/p <= 2 p^r.
    const long double tail = ram ? 2.0L * std::pow(q, R + 1) / (1.0L - q) : detail::geometric_tail(q, R);
    return {static_cast<double>(sum), R, static_cast<double>(tail)};
}

/// Factor at p of |m|^{-s/2} zeta(s-1)/L(s, chi_D) sigma(a, m, 1-s) (or of the m = 0
/// right-hand side), written in q = p^(1-s).
inline double rhs_euler_factor(const GenusFingerprint& fp, std::int64_t p, std::int64_t m, double s)
{
    const Discriminant D(fp.D);
    const long double chi = D.chi(p).value();
    const long double q = std::pow(static_cast<long double>(p), 1.0L - s);
    const long double base = (p - chi * q) / (p * (1.0L - q));
    if (m == 0)
        return static_cast<double>(D.ramifies(p) ? base : base / (1.0L - chi * q));
    const int nu = valuation(m, p);
    if (D.ramifies(p)) {
        const std::int64_t mp = ipow(p, nu);
        const Sign sgn = legendre(-(D.value() / p), p).pow(nu) * fp.at(p) * legendre(m / mp, p);
        return static_cast<double>(base * (1.0L + sgn.value() * std::pow(static_cast<long double>(mp), 1.0L - s)));
    }
    return static_cast<double>(base * (1.0L - std::pow(chi * q, nu + 1)) / (1.0L - chi * q));
}

// ---------------------------------------------------------------------------
// zeta and L

/// sum_{n <= B} n^{-s}, tail bound B^(1-s)/(s-1).
inline SeriesEval zeta_truncated(double s, std::int64_t B)
{
    detail::require_s_above(s, 1.0, "zeta_truncated");
    if (B < 1)
        throw DomainError("zeta_truncated: B must be positive");
    long double sum = 0.0L;
    for (std::int64_t n = B; n >= 1; --n)
        sum += std::pow(static_cast<long double>(n), -static_cast<long double>(s));
    return {static_cast<double>(sum), B, std::pow(static_cast<double>(B), 1.0 - s) / (s - 1.0)};
}

/// zeta(s) from the partial sum to B plus the Euler-Maclaurin tail through the
/// B_4 term; tail_bound is the size of the next correction.
inline SeriesEval zeta_accelerated(double s, std::int64_t B)
{
    const SeriesEval partial = zeta_truncated(s, B);
    const long double x = static_cast<long double>(B);
    const long double S = s;
    const long double tail = std::pow(x, 1.0L - S) / (S - 1.0L) - std::pow(x, -S) / 2.0L +
                             S * std::pow(x, -S - 1.0L) / 12.0L -
                             S * (S + 1) * (S + 2) * std::pow(x, -S - 3.0L) / 720.0L;
    const long double next = S * (S + 1) * (S + 2) * (S + 3) * (S + 4) * std::pow(x, -S - 5.0L) / 30240.0L;
    return {static_cast<double>(partial.value + tail), B, static_cast<double>(std::abs(next))};
}

/// sum_{n <= B} chi_D(n) n^{-s} for s > 0; Abel summation bounds the tail by D B^{-s}.
inline SeriesEval l_truncated(const Discriminant& D, double s, std::int64_t B)
{
    detail::require_s_above(s, 0.0, "l_truncated");
    if (B < 1)
        throw DomainError("l_truncated: B must be positive");
    const auto chi = detail::character_table(D.value());
    long double sum = 0.0L;
    for (std::int64_t n = B; n >= 1; --n) {
        const int c = chi[static_cast<std::size_t>(n % D.value())];
        if (c != 0)
            sum += c * std::pow(static_cast<long double>(n), -static_cast<long double>(s));
    }
    return {static_cast<double>(sum), B,
            static_cast<double>(D.value()) * std::pow(static_cast<double>(B), -s)};
}

/// prod_{p <= B} (1 - chi_D(p) p^{-s})^{-1}.
inline double l_euler_partial(const Discriminant& D, double s, std::int64_t B)
{
    detail::require_s_above(s, 1.0, "l_euler_partial");
    const auto spf = detail::smallest_prime_factors(B);
    long double prod = 1.0L;
    for (std::int64_t p = 2; p <= B; ++p)
        if (spf[static_cast<std::size_t>(p)] == p)
            prod /= 1.0L - D.chi(p).value() * std::pow(static_cast<long double>(p), -static_cast<long double>(s));
    return static_cast<double>(prod);
}

// ---------------------------------------------------------------------------
// The series sum_b G^b(a, m, 0) b^{-s} and its closed form

enum class LhsMode { formula, oracle };

/// sum_{b <= B} G^b(a, m, 0) b^{-s} with G^b from the prime-power formulas.
/// In oracle mode the terms b <= 60 are counted by enumeration instead.
///
/// Tail: G^b <= 2^omega(D) b tau(b), giving 4 2^omega(D) B^(2-s) (1 + ln B)/(s - 2).
inline SeriesEval series_lhs(const FracIdeal& I, std::int64_t m, double s, std::int64_t B,
                             LhsMode mode = LhsMode::formula, const Limits& lim = {},
                             GenusCache& cache = GenusCache::global())
{
    detail::require_s_above(s, 2.0, "series_lhs");
    if (B < 1)
        throw DomainError("series_lhs: B must be positive");
    const Discriminant& D = I.disc();
    const auto ram = D.ramified_primes();
    std::map<std::int64_t, Sign> na;
    for (std::int64_t p : ram)
        na.emplace(p, ramified_norm_sign(I, p, lim, cache));

    std::map<std::pair<std::int64_t, int>, std::int64_t> memo;
    auto count = [&](std::int64_t p, int e) {
        const auto key = std::make_pair(p, e);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        std::optional<Sign> sign;
        if (auto it = na.find(p); it != na.end())
            sign = it->second;
        const std::int64_t v = rep_count_prime_power(D, p, e, m, sign);
        memo.emplace(key, v);
        return v;
    };

    const auto spf = detail::smallest_prime_factors(B);
    long double sum = 0.0L;
    for (std::int64_t b = 1; b <= B; ++b) {
        std::int64_t g;
        if (mode == LhsMode::oracle && b <= 60) {
            g = g_rep_bruteforce(I, m, b, lim);
        } else {
            std::map<std::int64_t, int> exps;
            for (std::int64_t x = b; x > 1;) {
                const std::int64_t p = spf[static_cast<std::size_t>(x)];
                ++exps[p];
                x /= p;
            }
            g = 1;
            for (std::int64_t p : ram) {
                const auto it = exps.find(p);
                const int e = (it == exps.end() ? 0 : it->second) + 1;
                g = checked_mul(g, count(p, e) / p);
            }
            for (const auto& [p, e] : exps)
                if (!D.ramifies(p))
                    g = checked_mul(g, count(p, e));
        }
        if (g != 0)
            sum += static_cast<long double>(g) * std::pow(static_cast<long double>(b), -static_cast<long double>(s));
    }
    const double omega_factor = std::ldexp(1.0, static_cast<int>(ram.size()));
    const double Bd = static_cast<double>(B);
    const double tail = 4.0 * omega_factor * std::pow(Bd, 2.0 - s) * (1.0 + std::log(Bd)) / (s - 2.0);
    return {static_cast<double>(sum), B, tail};
}

/// |m|^{-s/2} zeta(s-1)/L(s, chi_D) sigma(a, m, 1-s) for m != 0, and
/// zeta(s-1) L(s-1, chi_D)/L(s, chi_D) for m = 0.
///
/// zeta(s-1) is taken from zeta_accelerated, the L-values from their partial
/// sums to B; tail_bound is a first-order propagation of the truncation bounds.
inline SeriesEval series_rhs(const GenusFingerprint& fp, std::int64_t m, double s, std::int64_t B,
                             const Limits& lim = {})
{
    detail::require_s_above(s, 2.0, "series_rhs");
    const Discriminant D(fp.D, lim);
    const SeriesEval zeta = zeta_accelerated(s - 1.0, B);
    const SeriesEval L = l_truncated(D, s, B);
    double value = 0.0;
    double rel = zeta.tail_bound / zeta.value + L.tail_bound / std::abs(L.value);
    if (m == 0) {
        const SeriesEval L1 = l_truncated(D, s - 1.0, B);
        value = zeta.value * L1.value / L.value;
        rel += L1.tail_bound / std::abs(L1.value);
    } else {
        const double am = static_cast<double>(m < 0 ? -m : m);
        const double sigma = sigma_def(SigmaQuery{fp, m, 1.0 - s}, lim);
        value = std::pow(am, -s / 2.0) * zeta.value * sigma / L.value;
    }
    return {value, B, std::abs(value) * rel};
}

/// Residue at s = 2: sigma(a, m, -1)/(|m| L(2, chi_D)) for m != 0 and
/// L(1, chi_D)/L(2, chi_D) for m = 0.
inline SeriesEval residue_at_2(const GenusFingerprint& fp, std::int64_t m, std::int64_t B, const Limits& lim = {})
{
    const Discriminant D(fp.D, lim);
    const SeriesEval L2 = l_truncated(D, 2.0, B);
    if (m == 0) {
        const SeriesEval L1 = l_truncated(D, 1.0, B);
        const double value = L1.value / L2.value;
        return {value, B, std::abs(value) * (L1.tail_bound / std::abs(L1.value) + L2.tail_bound / std::abs(L2.value))};
    }
    const double am = static_cast<double>(m < 0 ? -m : m);
    const double value = sigma_def(SigmaQuery{fp, m, -1.0}, lim) / (am * L2.value);
    return {value, B, std::abs(value) * L2.tail_bound / std::abs(L2.value)};
}

/// Richardson limit of h * series_rhs(2 + h) from h = 1/2, 1/4, 1/8.
inline double residue_extrapolated(const GenusFingerprint& fp, std::int64_t m, std::int64_t B,
                                   const Limits& lim = {})
{
    auto f = [&](double h) { return h * series_rhs(fp, m, 2.0 + h, B, lim).value; };
    const double f1 = f(0.5);
    const double f2 = f(0.25);
    const double f3 = f(0.125);
    return (8.0 * f3 - 6.0 * f2 + f1) / 3.0;
}

// ---------------------------------------------------------------------------
// Both sides at once

struct FactorCheck {
    std::int64_t p = 0;
    SeriesEval direct;  ///< partial sum of the prime-power counts
    double closed = 0;  ///< closed Euler factor of the left-hand side
    double rhs = 0;     ///< factor of the right-hand Euler product
    bool agree = false;
};

struct TheoremReport {
    SeriesEval lhs;
    SeriesEval rhs;
    std::vector<FactorCheck> factors;
    double difference = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Compares both sides of the series identity and, prime by prime for p <= 50,
/// the Euler factors behind it. Pass requires |lhs - rhs| <= tol max(1, |rhs|)
/// and agreement of every factor.
inline TheoremReport verify_theorem(const FracIdeal& I, std::int64_t m, double s, std::int64_t B, double tol,
                                    LhsMode mode = LhsMode::formula, const Limits& lim = {},
                                    GenusCache& cache = GenusCache::global())
{
    detail::require_s_above(s, 2.0, "verify_theorem");
    const Discriminant& D = I.disc();
    const GenusFingerprint fp = cache.get(I, lim);
    TheoremReport rep;
    rep.lhs = series_lhs(I, m, s, B, mode, lim, cache);
    rep.rhs = series_rhs(fp, m, s, B, lim);
    rep.difference = std::abs(rep.lhs.value - rep.rhs.value);
    rep.tolerance = tol * std::max(1.0, std::abs(rep.rhs.value));
    bool factors_ok = true;
    for (std::int64_t p = 2; p <= 50; ++p) {
        if (!is_prime(p))
            continue;
        FactorCheck fc;
        fc.p = p;
        std::optional<Sign> na;
        if (D.ramifies(p))
            na = fp.at(p);
        fc.direct = euler_factor_direct(D, p, m, na, s);
        fc.closed = D.ramifies(p) ? euler_factor_ramified(D, p, m, *na, s) : euler_factor_unramified(D, p, m, s);
        fc.rhs = rhs_euler_factor(fp, p, m, s);
        fc.agree = std::abs(fc.direct.value - fc.closed) <= fc.direct.tail_bound + 1e-12 * std::abs(fc.closed) &&
                   std::abs(fc.closed - fc.rhs) <= 1e-12 * std::max(1.0, std::abs(fc.closed));
        factors_ok = factors_ok && fc.agree;
        rep.factors.push_back(fc);
    }
    rep.pass = factors_ok && rep.difference <= rep.tolerance;
    return rep;
}

} // namespace quadrep
