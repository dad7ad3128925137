#include <gtest/gtest.h>

#include "oracles.hpp"
#include "quadrep/arith.hpp"

using namespace quadrep;

TEST(Kronecker, KnownValues)
{
    EXPECT_EQ(kronecker(21, 1), Sign::plus());
    EXPECT_EQ(kronecker(5, 2), Sign::minus());
    EXPECT_EQ(kronecker(-3, 5), Sign::minus());
    EXPECT_EQ(kronecker(5, 5), Sign::zero());
}

TEST(Kronecker, MatchesFactorizationOracle)
{
    for (std::int64_t a = -60; a <= 60; ++a)
        for (std::int64_t n = -60; n <= 60; ++n)
            ASSERT_EQ(kronecker(a, n).value(), oracle::kronecker(a, n)) << "a=" << a << " n=" << n;
}

TEST(Kronecker, CompletelyMultiplicativeInTop)
{
    for (std::int64_t D : {5, 13, 21, 33, 105})
        for (std::int64_t a = 1; a <= 40; ++a)
            for (std::int64_t b = 1; b <= 40; ++b)
                ASSERT_EQ(kronecker(D, a * b), kronecker(D, a) * kronecker(D, b));
}

TEST(Kronecker, PeriodicModDForFundamentalD)
{
    for (std::int64_t D : {5, 13, 17, 21, 33, 57, 105}) {
        int period_sum = 0;
        for (std::int64_t n = 1; n <= 3 * D; ++n) {
            ASSERT_EQ(kronecker(D, n), kronecker(D, n + D));
            if (n <= D)
                period_sum += kronecker(D, n).value();
        }
        EXPECT_EQ(period_sum, 0) << "D=" << D;
    }
}

TEST(Eps, Values)
{
    EXPECT_EQ(eps(5), FourthRoot::one);
    EXPECT_EQ(eps(3), FourthRoot::i);
    EXPECT_EQ(eps(21), FourthRoot::one);
    EXPECT_THROW(eps(4), DomainError);
    EXPECT_THROW(eps(-3), DomainError);
}

TEST(Factorize, Basics)
{
    const auto f12 = factorize(12);
    ASSERT_EQ(f12.size(), 2u);
    EXPECT_EQ(f12.factors()[0].prime, 2);
    EXPECT_EQ(f12.factors()[0].exponent, 2);
    EXPECT_EQ(f12.factors()[1].prime, 3);
    EXPECT_EQ(f12.factors()[1].exponent, 1);

    const auto f21 = factorize(21);
    EXPECT_EQ(f21.primes(), (std::vector<std::int64_t>{3, 7}));

    const auto fm5 = factorize(-5);
    ASSERT_EQ(fm5.size(), 1u);
    EXPECT_EQ(fm5.factors()[0].prime, 5);
    EXPECT_EQ(fm5.value(), 5);
}

TEST(Factorize, RoundTrip)
{
    for (std::int64_t n = 1; n <= 2000; ++n) {
        const auto f = factorize(n);
        EXPECT_EQ(f.value(), n);
        for (const auto& pp : f)
            EXPECT_TRUE(oracle::is_prime(pp.prime));
    }
}

TEST(Factorize, Errors)
{
    EXPECT_THROW(factorize(0), DomainError);
    Limits lim;
    lim.max_factor = 100;
    EXPECT_THROW(factorize(101, lim), BoundExceeded);
}

TEST(Valuation, Rational)
{
    EXPECT_EQ(valuation(Rational(9, 2), 3), 2);
    EXPECT_EQ(valuation(Rational(1), 7), 0);
    EXPECT_EQ(valuation(Rational(5, 49), 7), -2);
    EXPECT_EQ(valuation(std::int64_t{96}, 2), 5);
}

TEST(RationalLegendre, Values)
{
    EXPECT_EQ(rational_legendre(Rational(1, 5), 3), Sign::minus());
    for (std::int64_t p : {3, 5, 7, 11, 13})
        EXPECT_EQ(rational_legendre(Rational(4), p), Sign::plus());
    EXPECT_EQ(rational_legendre(Rational(1), 7), Sign::plus());
    EXPECT_THROW(rational_legendre(Rational(3, 2), 3), DomainError);
}

TEST(RationalLegendre, MultiplicativeAndInverseInvariant)
{
    for (std::int64_t p : {3, 5, 7, 11})
        for (std::int64_t n = 1; n <= 30; ++n)
            for (std::int64_t d = 1; d <= 30; ++d) {
                if (n % p == 0 || d % p == 0)
                    continue;
                EXPECT_EQ(rational_legendre(Rational(n, d), p),
                          rational_legendre(Rational(n), p) * rational_legendre(Rational(d), p));
            }
}

TEST(Moebius, Values)
{
    EXPECT_EQ(moebius(1), Sign::plus());
    EXPECT_EQ(moebius(6), Sign::plus());
    EXPECT_EQ(moebius(4), Sign::zero());
    EXPECT_EQ(moebius(30), Sign::minus());
    EXPECT_THROW(moebius(0), DomainError);
}

TEST(Divisors, Sorted)
{
    EXPECT_EQ(divisors(12), (std::vector<std::int64_t>{1, 2, 3, 4, 6, 12}));
    EXPECT_EQ(divisors(-9), (std::vector<std::int64_t>{1, 3, 9}));
}

TEST(Checked, Overflow)
{
    EXPECT_THROW(checked_mul(std::int64_t{1} << 40, std::int64_t{1} << 40), OverflowError);
    EXPECT_THROW(ipow(10, 30), OverflowError);
    EXPECT_EQ(ipow(7, 3), 343);
    EXPECT_THROW(to_int64(Integer(1) << 70), OverflowError);
}

TEST(SignType, Arithmetic)
{
    EXPECT_EQ(Sign::minus() * Sign::minus(), Sign::plus());
    EXPECT_EQ(Sign::minus().pow(3), Sign::minus());
    EXPECT_EQ(Sign::zero().pow(0), Sign::plus());
    EXPECT_THROW(Sign(2), DomainError);
}
