#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "quadrep/arith.hpp"
#include "quadrep/quadfield.hpp"

namespace quadrep {

/// Primitive integral ideal Z*a + Z*(b + sqrt D)/2.
///
/// Invariants: a > 0, b odd with 0 < b < 2a, and a | (b^2 - D)/4. The last
/// condition is exactly O_K-stability; primitivity (content 1) is automatic
/// in this shape.
class PrimIdeal {
public:
    PrimIdeal(const Discriminant& D, Integer a, Integer b) : D_(D), a_(std::move(a)), b_(std::move(b))
    {
        if (a_ <= 0)
            throw DomainError("PrimIdeal: a must be positive, got " + a_.str());
        if (b_ % 2 == 0)
            throw DomainError("PrimIdeal: b must be odd, got " + b_.str());
        const Integer t = b_ * b_ - D_.value();
        if (t % (4 * a_) != 0)
            throw DomainError("PrimIdeal: [" + a_.str() + ", " + b_.str() + "] is not an ideal for D = " +
                              std::to_string(D_.value()));
        b_ %= 2 * a_;
        if (b_ < 0)
            b_ += 2 * a_;
    }

    static PrimIdeal unit(const Discriminant& D) { return PrimIdeal(D, 1, 1); }

    const Discriminant& disc() const { return D_; }
    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }
    /// Third coefficient of the norm form a x^2 + b x y + c y^2.
    Integer c() const { return (b_ * b_ - D_.value()) / (4 * a_); }

    bool is_unit() const { return a_ == 1; }

    friend bool operator==(const PrimIdeal& x, const PrimIdeal& y)
    {
        return x.D_ == y.D_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

private:
    Discriminant D_;
    Integer a_;
    Integer b_;
};

/// Fractional ideal scale * prim with scale a positive rational.
class FracIdeal {
public:
    FracIdeal(Rational scale, PrimIdeal prim) : scale_(std::move(scale)), prim_(std::move(prim))
    {
        if (scale_ <= 0)
            throw DomainError("FracIdeal: scale must be positive, got " + to_string(scale_));
    }
    explicit FracIdeal(PrimIdeal prim) : FracIdeal(Rational(1), std::move(prim)) {}

    static FracIdeal unit(const Discriminant& D) { return FracIdeal(PrimIdeal::unit(D)); }

    const Rational& scale() const { return scale_; }
    const PrimIdeal& prim() const { return prim_; }
    const Discriminant& disc() const { return prim_.disc(); }

    friend bool operator==(const FracIdeal&, const FracIdeal&) = default;

private:
    Rational scale_;
    PrimIdeal prim_;
};

enum class Splitting { split, inert, ramified };

inline const char* to_string(Splitting s)
{
    switch (s) {
    case Splitting::split: return "split";
    case Splitting::inert: return "inert";
    case Splitting::ramified: return "ramified";
    }
    return "?";
}

/// A prime ideal P above the rational prime p.
struct PrimeIdeal {
    std::int64_t p;
    Splitting kind;
    FracIdeal ideal;
};

/// Signs chi_{D(p)}(N(a)) for the primes p | D, in increasing order of p.
struct GenusFingerprint {
    std::int64_t D = 1;
    std::vector<std::pair<std::int64_t, Sign>> signs;

    Sign at(std::int64_t p) const
    {
        for (const auto& [q, s] : signs)
            if (q == p)
                return s;
        throw DomainError("fingerprint has no entry for p = " + std::to_string(p));
    }

    Sign product() const
    {
        Sign s = Sign::plus();
        for (const auto& e : signs)
            s = s * e.second;
        return s;
    }

    std::string str() const
    {
        std::ostringstream os;
        os << '{';
        for (std::size_t i = 0; i < signs.size(); ++i)
            os << (i ? "," : "") << signs[i].first << ':' << (signs[i].second.value() > 0 ? "+1" : "-1");
        os << '}';
        return os.str();
    }

    friend bool operator==(const GenusFingerprint&, const GenusFingerprint&) = default;
};

/// Tally of N(lambda)/N(a) mod b over lambda in a/ba; counts[r] for r in Z/bZ.
struct NormProfile {
    std::int64_t modulus = 1;
    std::vector<std::int64_t> counts;

    std::int64_t at(std::int64_t m) const { return counts[static_cast<std::size_t>(floor_mod(m, modulus))]; }

    friend bool operator==(const NormProfile&, const NormProfile&) = default;
};

namespace detail {

/// Element scale*(u + v sqrt D)/2 in coordinates of the basis (1, omega).
struct LatticeVec {
    Rational x;
    Rational y;
};

inline LatticeVec coords(const FieldElem& e)
{
    const auto [x, y] = e.elem.to_basis();
    return {e.scale * Rational(x), e.scale * Rational(y)};
}

/// The O_K-ideal spanned over Z by the given vectors, in canonical form.
inline FracIdeal ideal_from_lattice(const Discriminant& D, const std::vector<LatticeVec>& gens)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;

    Integer den = 1;
    for (const auto& g : gens) {
        den = boost::multiprecision::lcm(den, denominator(g.x));
        den = boost::multiprecision::lcm(den, denominator(g.y));
    }
    struct Row {
        Integer x, y;
    };
    std::vector<Row> rows;
    for (const auto& g : gens) {
        rows.push_back({numerator(g.x) * (den / denominator(g.x)), numerator(g.y) * (den / denominator(g.y))});
    }

    // Euclid on the y column until a single row carries the y-gcd.
    while (true) {
        std::size_t pivot = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].y != 0 && (pivot == rows.size() || abs(rows[i].y) < abs(rows[pivot].y)))
                pivot = i;
        if (pivot == rows.size())
            throw DomainError("generators do not span a full lattice (zero ideal?)");
        bool reduced = false;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == pivot || rows[i].y == 0)
                continue;
            const Integer q = rows[i].y / rows[pivot].y;
            rows[i].x -= q * rows[pivot].x;
            rows[i].y -= q * rows[pivot].y;
            reduced = true;
        }
        if (!reduced) {
            std::swap(rows[pivot], rows.front());
            break;
        }
    }
    if (rows.front().y < 0) {
        rows.front().x = -rows.front().x;
        rows.front().y = -rows.front().y;
    }
    const Integer g = rows.front().y;
    Integer h = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        h = boost::multiprecision::gcd(h, abs(rows[i].x));
    if (h == 0)
        throw DomainError("generators do not span a full lattice");

    Integer xw = rows.front().x % h;
    if (xw < 0)
        xw += h;
    if (h % g != 0 || xw % g != 0)
        throw ConsistencyError("lattice is not an O_K-module");
    const Integer A = h / g;
    const Integer B = 2 * (xw / g) + 1;
    try {
        return FracIdeal(Rational(g, den), PrimIdeal(D, A, B));
    } catch (const DomainError& e) {
        throw ConsistencyError(std::string("lattice is not an O_K-module: ") + e.what());
    }
}

inline std::vector<std::int64_t> merged_primes(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b)
{
    std::vector<std::int64_t> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Basic operations

inline Rational ideal_norm(const FracIdeal& I) { return I.scale() * I.scale() * Rational(I.prim().a()); }

/// Z-basis (scale*a, scale*(b + sqrt D)/2).
inline std::pair<FieldElem, FieldElem> z_basis(const FracIdeal& I)
{
    const auto& P = I.prim();
    return {FieldElem{I.scale(), QuadElem::rational(P.a())}, FieldElem{I.scale(), QuadElem(P.b(), 1)}};
}

inline bool is_integral(const FracIdeal& I) { return boost::multiprecision::denominator(I.scale()) == 1; }

inline FracIdeal conjugate(const FracIdeal& I)
{
    return FracIdeal(I.scale(), PrimIdeal(I.disc(), I.prim().a(), -I.prim().b()));
}

inline FracIdeal mul_ideals(const FracIdeal& I, const FracIdeal& J)
{
    const Discriminant& D = I.disc();
    if (!(D == J.disc()))
        throw DomainError("mul_ideals: ideals of different fields");
    const QuadElem i1 = QuadElem::rational(I.prim().a());
    const QuadElem i2(I.prim().b(), 1);
    const QuadElem j1 = QuadElem::rational(J.prim().a());
    const QuadElem j2(J.prim().b(), 1);
    const Rational s = I.scale() * J.scale();
    std::vector<detail::LatticeVec> gens;
    for (const QuadElem& x : {i1, i2})
        for (const QuadElem& y : {j1, j2})
            gens.push_back(detail::coords(FieldElem{s, mul(x, y, D)}));
    return detail::ideal_from_lattice(D, gens);
}

/// a^-1 = conj(a)/N(a).
inline FracIdeal inverse(const FracIdeal& I)
{
    return FracIdeal(Rational(1) / (I.scale() * Rational(I.prim().a())),
                     PrimIdeal(I.disc(), I.prim().a(), -I.prim().b()));
}

inline FracIdeal ideal_pow(const FracIdeal& I, int k)
{
    FracIdeal base = k < 0 ? inverse(I) : I;
    FracIdeal r = FracIdeal::unit(I.disc());
    for (int i = 0; i < (k < 0 ? -k : k); ++i)
        r = mul_ideals(r, base);
    return r;
}

/// The principal ideal (lambda), lambda != 0.
inline FracIdeal principal_ideal(const FieldElem& lambda, const Discriminant& D)
{
    if (lambda.scale == 0 || lambda.elem.is_zero())
        throw DomainError("principal_ideal: zero element");
    const FieldElem a{lambda.scale, lambda.elem};
    const FieldElem b{lambda.scale, mul(lambda.elem, QuadElem::omega(), D)};
    return detail::ideal_from_lattice(D, {detail::coords(a), detail::coords(b)});
}

// ---------------------------------------------------------------------------
// Prime ideals and valuations

/// Primes above p in canonical order (split: increasing b).
inline std::vector<PrimeIdeal> prime_above(const Discriminant& D, std::int64_t p)
{
    if (!is_prime(p))
        throw DomainError("prime_above: " + std::to_string(p) + " is not prime");
    const Sign chi = D.chi(p);
    if (chi == Sign::minus())
        return {PrimeIdeal{p, Splitting::inert, FracIdeal(Rational(p), PrimIdeal::unit(D))}};

    // Odd b in (0, 2p) with b^2 = D mod 4p; linear scan is fine at desk scale.
    std::vector<PrimeIdeal> out;
    const std::int64_t mod = checked_mul(4, p);
    const std::int64_t Dm = floor_mod(D.value(), mod);
    for (std::int64_t b = 1; b < 2 * p; b += 2) {
        if (mul_mod(b, b, mod) == Dm) {
            out.push_back(PrimeIdeal{p, chi.is_zero() ? Splitting::ramified : Splitting::split,
                                     FracIdeal(PrimIdeal(D, p, b))});
        }
    }
    const std::size_t expected = chi.is_zero() ? 1 : 2;
    if (out.size() != expected)
        throw ConsistencyError("prime_above: unexpected number of square roots for p = " + std::to_string(p));
    return out;
}

/// Exponent of the prime ideal P in I.
inline int ideal_valuation(const FracIdeal& I, const PrimeIdeal& P)
{
    const int e = (P.kind == Splitting::ramified) ? 2 : 1;
    int v = e * valuation(I.scale(), P.p);
    if (P.kind == Splitting::inert)
        return v;  // a primitive ideal is never divisible by (p)
    const FracIdeal Pinv = inverse(P.ideal);
    FracIdeal X(I.prim());
    while (true) {
        FracIdeal Y = mul_ideals(X, Pinv);
        if (!is_integral(Y))
            break;
        X = std::move(Y);
        ++v;
    }
    return v;
}

inline bool coprime_to_prime(const FracIdeal& I, std::int64_t p)
{
    for (const auto& P : prime_above(I.disc(), p))
        if (ideal_valuation(I, P) != 0)
            return false;
    return true;
}

/// True iff nu_P(I) = 0 for every P above every prime dividing n.
inline bool coprime_to(const FracIdeal& I, std::int64_t n, const Limits& lim = {})
{
    for (const auto& pp : factorize(n, lim))
        if (!coprime_to_prime(I, pp.prime))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Residue enumeration

/// Values of the integral form N(x alpha + y beta)/N(I) = a x^2 + b x y + c y^2
/// tallied mod modulus over (x, y) in (Z/modulus)^2.
inline NormProfile residue_norm_profile(const FracIdeal& I, std::int64_t modulus, const Limits& lim = {})
{
    if (modulus < 1)
        throw DomainError("residue_norm_profile: modulus must be positive");
    if (modulus > lim.max_enum_b)
        throw BoundExceeded("residue_norm_profile: modulus " + std::to_string(modulus) + " exceeds enumeration bound " +
                            std::to_string(lim.max_enum_b));
    const std::int64_t b = modulus;
    const std::int64_t A = floor_mod(I.prim().a(), b);
    const std::int64_t B = floor_mod(I.prim().b(), b);
    const std::int64_t C = floor_mod(I.prim().c(), b);

    std::vector<std::int64_t> cy2(static_cast<std::size_t>(b));
    for (std::int64_t y = 0; y < b; ++y)
        cy2[static_cast<std::size_t>(y)] = mul_mod(C, mul_mod(y, y, b), b);

    auto tally_rows = [&](std::int64_t x0, std::int64_t x1, std::vector<std::int64_t>& counts) {
        for (std::int64_t x = x0; x < x1; ++x) {
            const std::int64_t ax2 = mul_mod(A, mul_mod(x, x, b), b);
            const std::int64_t bx = mul_mod(B, x, b);
            std::int64_t lin = 0;  // bx * y mod b
            for (std::int64_t y = 0; y < b; ++y) {
                std::int64_t v = ax2 + lin + cy2[static_cast<std::size_t>(y)];
                v %= b;
                ++counts[static_cast<std::size_t>(v)];
                lin += bx;
                if (lin >= b)
                    lin -= b;
            }
        }
    };

    NormProfile out{b, std::vector<std::int64_t>(static_cast<std::size_t>(b), 0)};
    const unsigned hw = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    if (b < 512 || hw == 1) {
        tally_rows(0, b, out.counts);
        return out;
    }
    // Fixed row partition; integer tallies make the merge order irrelevant.
    std::vector<std::vector<std::int64_t>> partial(hw, std::vector<std::int64_t>(static_cast<std::size_t>(b), 0));
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < hw; ++t) {
        const std::int64_t x0 = b * t / hw;
        const std::int64_t x1 = b * (t + 1) / hw;
        workers.emplace_back(tally_rows, x0, x1, std::ref(partial[t]));
    }
    for (auto& w : workers)
        w.join();
    for (const auto& part : partial)
        for (std::size_t r = 0; r < part.size(); ++r)
            out.counts[r] += part[r];
    return out;
}

// ---------------------------------------------------------------------------
// Genus

/// An integral ideal coprime to n*D in the genus of I, found as (lambda) I^-1
/// for the first lambda = x alpha + y beta (expanding square shells) with
/// N(lambda) > 0 and N(lambda)/N(I) coprime to n*D.
inline FracIdeal coprime_genus_representative(const FracIdeal& I, std::int64_t n, const Limits& lim = {})
{
    if (n < 1)
        throw DomainError("coprime_genus_representative: n must be positive");
    const Discriminant& D = I.disc();
    const std::vector<std::int64_t> bad = detail::merged_primes(factorize(n, lim).primes(), D.ramified_primes());

    auto coprime_norm = [&](const Integer& v) {
        for (std::int64_t p : bad)
            if (v % p == 0)
                return false;
        return true;
    };

    if (is_integral(I)) {
        bool ok = true;
        for (std::int64_t p : bad)
            ok = ok && coprime_to_prime(I, p);
        if (ok)
            return I;
    }

    const Integer& a = I.prim().a();
    const Integer& b = I.prim().b();
    const Integer c = I.prim().c();
    const FracIdeal Iinv = inverse(I);
    for (int R = 1; R <= lim.max_search_radius; ++R) {
        for (int x = -R; x <= R; ++x) {
            for (int y = -R; y <= R; ++y) {
                if (std::max(std::abs(x), std::abs(y)) != R)
                    continue;
                const Integer f = a * x * x + b * x * y + c * y * y;
                if (f <= 0 || !coprime_norm(f))
                    continue;
                // lambda = x * scale * a + y * scale * (b + sqrt D)/2
                const QuadElem lam(2 * a * x + b * y, Integer(y));
                FracIdeal rep = mul_ideals(principal_ideal(FieldElem{I.scale(), lam}, D), Iinv);
                if (!is_integral(rep) || ideal_norm(rep) != Rational(f))
                    throw ConsistencyError("coprime_genus_representative: representative has wrong norm");
                return rep;
            }
        }
    }
    throw SearchFailure("coprime_genus_representative: no suitable element within radius " +
                        std::to_string(lim.max_search_radius));
}

/// signs[p] = chi_{D(p)}(N(c)) for a representative c of the genus of I coprime to D.
inline GenusFingerprint genus_fingerprint(const FracIdeal& I, const Limits& lim = {})
{
    const Discriminant& D = I.disc();
    bool coprime = true;
    for (std::int64_t p : D.ramified_primes())
        coprime = coprime && coprime_to_prime(I, p);
    const Rational N = coprime ? ideal_norm(I) : ideal_norm(coprime_genus_representative(I, 1, lim));
    GenusFingerprint fp{D.value(), {}};
    // N > 0, so chi_{D(p)}(N) is the Legendre symbol (N/p).
    for (std::int64_t p : D.ramified_primes())
        fp.signs.emplace_back(p, rational_legendre(N, p));
    return fp;
}

/// Every sign vector over p | D with product +1; one per genus.
inline std::vector<GenusFingerprint> possible_fingerprints(const Discriminant& D)
{
    const auto ps = D.ramified_primes();
    std::vector<GenusFingerprint> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ps.size()); ++mask) {
        GenusFingerprint fp{D.value(), {}};
        for (std::size_t i = 0; i < ps.size(); ++i)
            fp.signs.emplace_back(ps[i], (mask >> i) & 1 ? Sign::minus() : Sign::plus());
        if (fp.product() == Sign::plus())
            out.push_back(std::move(fp));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text format: ok | prim:a,b | frac:num/den:a,b | prime:p,k (k = 1, 2)

inline std::string format_ideal(const FracIdeal& I)
{
    const std::string ab = I.prim().a().str() + "," + I.prim().b().str();
    if (I.scale() == 1)
        return I.prim().is_unit() ? "ok" : "prim:" + ab;
    return "frac:" + to_string(I.scale()) + ":" + ab;
}

namespace detail {

inline Integer parse_integer(const std::string& s, const std::string& context)
{
    std::string t = s;
    if (!t.empty() && t.front() == '+')
        t.erase(0, 1);
    if (t.empty() || t.find_first_not_of("-0123456789") != std::string::npos ||
        t.find('-', 1) != std::string::npos || t == "-")
        throw DomainError("cannot parse integer '" + s + "' in " + context);
    return Integer(t);
}

inline std::pair<Integer, Integer> parse_pair(const std::string& s, const std::string& context)
{
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw DomainError("expected 'x,y' in " + context);
    return {parse_integer(s.substr(0, comma), context), parse_integer(s.substr(comma + 1), context)};
}

} // namespace detail

inline FracIdeal parse_ideal(const Discriminant& D, const std::string& text)
{
    if (text == "ok")
        return FracIdeal::unit(D);
    if (text.rfind("prim:", 0) == 0) {
        const auto [a, b] = detail::parse_pair(text.substr(5), text);
        return FracIdeal(PrimIdeal(D, a, b));
    }
    if (text.rfind("frac:", 0) == 0) {
        const std::string rest = text.substr(5);
        const auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw DomainError("expected frac:num/den:a,b, got '" + text + "'");
        const std::string q = rest.substr(0, colon);
        const auto slash = q.find('/');
        const Integer num = detail::parse_integer(q.substr(0, slash), text);
        const Integer den = slash == std::string::npos ? Integer(1) : detail::parse_integer(q.substr(slash + 1), text);
        if (den == 0)
            throw DomainError("zero denominator in '" + text + "'");
        const auto [a, b] = detail::parse_pair(rest.substr(colon + 1), text);
        return FracIdeal(Rational(num, den), PrimIdeal(D, a, b));
    }
    if (text.rfind("prime:", 0) == 0) {
        const auto [p, k] = detail::parse_pair(text.substr(6), text);
        const auto primes = prime_above(D, to_int64(p));
        if (k < 1 || k > static_cast<long>(primes.size()))
            throw DomainError("'" + text + "': there are " + std::to_string(primes.size()) + " primes above " +
                              p.str() + " (k is 1-based)");
        return primes[static_cast<std::size_t>(k - 1)].ideal;
    }
    throw DomainError("cannot parse ideal '" + text + "', expected ok | prim:a,b | frac:num/den:a,b | prime:p,k");
}

} // namespace quadrep
