#pragma once

#include <cstdint>
#include <optional>
#include <regex>
#include <string>

#include "quadrep/arith.hpp"

namespace quadrep {

/// Odd fundamental discriminant D > 1 of the real quadratic field Q(sqrt D).
///
/// D = 1 mod 4 and squarefree; every prime p | D is ramified and divides D
/// exactly once. The different of the field is (sqrt D).
class Discriminant {
public:
    explicit Discriminant(std::int64_t D, const Limits& lim = {}) : D_(D)
    {
        if (D <= 1)
            throw DomainError("discriminant must be > 1, got " + std::to_string(D));
        if (D % 2 == 0)
            throw DomainError("discriminant must be odd, got " + std::to_string(D));
        if (D % 4 != 1)
            throw DomainError("discriminant must be 1 mod 4, got " + std::to_string(D));
        ramified_ = factorize(D, lim);
        for (const auto& pp : ramified_)
            if (pp.exponent != 1)
                throw DomainError("discriminant must be squarefree, got " + std::to_string(D));
    }

    std::int64_t value() const { return D_; }
    const Factorization& ramified() const { return ramified_; }
    std::vector<std::int64_t> ramified_primes() const { return ramified_.primes(); }
    bool ramifies(std::int64_t p) const { return D_ % p == 0; }

    /// chi_D(n) = (D/n).
    Sign chi(std::int64_t n) const { return kronecker(D_, n); }

    friend bool operator==(const Discriminant& a, const Discriminant& b) { return a.D_ == b.D_; }

private:
    std::int64_t D_;
    Factorization ramified_;
};

/// Element (u + v sqrt D)/2 of O_K; u = v mod 2.
class QuadElem {
public:
    QuadElem() = default;
    QuadElem(Integer u, Integer v) : u_(std::move(u)), v_(std::move(v))
    {
        if ((u_ - v_) % 2 != 0)
            throw DomainError("QuadElem: u and v must have equal parity (" + u_.str() + ", " + v_.str() + ")");
    }

    /// a + b*omega with omega = (1 + sqrt D)/2.
    static QuadElem from_basis(const Integer& a, const Integer& b) { return QuadElem(2 * a + b, b); }
    static QuadElem rational(const Integer& n) { return QuadElem(2 * n, 0); }
    static QuadElem omega() { return QuadElem(1, 1); }

    const Integer& u() const { return u_; }
    const Integer& v() const { return v_; }

    /// Coordinates (a, b) with x = a + b*omega.
    std::pair<Integer, Integer> to_basis() const { return {(u_ - v_) / 2, v_}; }

    bool is_zero() const { return u_ == 0 && v_ == 0; }

    friend bool operator==(const QuadElem&, const QuadElem&) = default;

private:
    Integer u_ = 0;
    Integer v_ = 0;
};

inline QuadElem conjugate(const QuadElem& x) { return QuadElem(x.u(), -x.v()); }

/// N(x) = (u^2 - D v^2)/4, an integer for elements of O_K.
inline Integer norm(const QuadElem& x, const Discriminant& D)
{
    return (x.u() * x.u() - D.value() * x.v() * x.v()) / 4;
}

/// tr(x) = x + x' = u.
inline Integer trace(const QuadElem& x) { return x.u(); }

inline QuadElem add(const QuadElem& x, const QuadElem& y) { return QuadElem(x.u() + y.u(), x.v() + y.v()); }

inline QuadElem scale(const QuadElem& x, const Integer& n) { return QuadElem(n * x.u(), n * x.v()); }

/// ((u1 + v1 r)(u2 + v2 r))/4 with r^2 = D, written again over 2.
inline QuadElem mul(const QuadElem& x, const QuadElem& y, const Discriminant& D)
{
    const Integer u = x.u() * y.u() + D.value() * x.v() * y.v();
    const Integer v = x.u() * y.v() + x.v() * y.u();
    // u and v are even: u1 = v1 and u2 = v2 mod 2, D odd.
    return QuadElem(u / 2, v / 2);
}

/// General element of K written as scale * x with x in O_K.
struct FieldElem {
    Rational scale{1};
    QuadElem elem;
};

inline Rational norm(const FieldElem& x, const Discriminant& D)
{
    return x.scale * x.scale * Rational(norm(x.elem, D));
}

// ---------------------------------------------------------------------------
// Text format "u+v*sqrtD/2"

inline std::string format_elem(const QuadElem& x)
{
    std::string s = x.u().str();
    s += (x.v() < 0) ? "-" : "+";
    s += Integer(abs(x.v())).str();
    s += "*sqrtD/2";
    return s;
}

inline QuadElem parse_elem(const std::string& text)
{
    static const std::regex re(R"(^\s*\(?\s*([+-]?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrtD\s*\)?\s*/\s*2\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re))
        throw DomainError("cannot parse element '" + text + "', expected u+v*sqrtD/2");
    std::string us = m[1].str();
    if (!us.empty() && us.front() == '+')
        us.erase(0, 1);
    Integer u(us);
    Integer v(m[3].str());
    if (m[2].str() == "-")
        v = -v;
    return QuadElem(u, v);
}

} // namespace quadrep
