#include <gtest/gtest.h>

#include "quadrep/quadfield.hpp"

using namespace quadrep;

TEST(DiscriminantTest, Validation)
{
    EXPECT_NO_THROW(Discriminant(5));
    EXPECT_NO_THROW(Discriminant(105));
    EXPECT_THROW(Discriminant(1), DomainError);
    EXPECT_THROW(Discriminant(8), DomainError);
    EXPECT_THROW(Discriminant(7), DomainError);
    EXPECT_THROW(Discriminant(45), DomainError);
    EXPECT_THROW(Discriminant(-3), DomainError);
}

TEST(DiscriminantTest, RamifiedPrimes)
{
    EXPECT_EQ(Discriminant(105).ramified_primes(), (std::vector<std::int64_t>{3, 5, 7}));
    EXPECT_TRUE(Discriminant(21).ramifies(7));
    EXPECT_FALSE(Discriminant(21).ramifies(5));
    EXPECT_EQ(Discriminant(5).chi(2), Sign::minus());
    EXPECT_EQ(Discriminant(17).chi(2), Sign::plus());
}

TEST(QuadElemTest, ParityInvariant)
{
    EXPECT_NO_THROW(QuadElem(1, 1));
    EXPECT_NO_THROW(QuadElem(0, 2));
    EXPECT_THROW(QuadElem(1, 2), DomainError);
}

TEST(QuadElemTest, ConjugateNormTrace)
{
    const Discriminant D5(5);
    const Discriminant D21(21);
    EXPECT_EQ(conjugate(QuadElem::omega()), QuadElem(1, -1));
    EXPECT_EQ(conjugate(QuadElem(2, 0)), QuadElem(2, 0));
    EXPECT_EQ(norm(QuadElem::omega(), D5), -1);
    EXPECT_EQ(norm(QuadElem::omega(), D21), -5);
    EXPECT_EQ(norm(QuadElem(2, 0), D21), 1);
    EXPECT_EQ(trace(QuadElem(1, 1)), 1);
    EXPECT_EQ(trace(QuadElem(2, 0)), 2);
    EXPECT_EQ(trace(QuadElem(0, 2)), 0);
}

TEST(QuadElemTest, Multiplication)
{
    const Discriminant D5(5);
    EXPECT_EQ(mul(QuadElem::omega(), QuadElem::omega(), D5), QuadElem(3, 1));
    const QuadElem x(7, 3);
    EXPECT_EQ(mul(x, QuadElem(2, 0), D5), x);
}

TEST(QuadElemTest, NormIsMultiplicative)
{
    for (std::int64_t d : {5, 13, 21, 33}) {
        const Discriminant D(d);
        for (int u1 = -5; u1 <= 5; ++u1)
            for (int v1 = -5; v1 <= 5; ++v1) {
                if ((u1 - v1) % 2 != 0)
                    continue;
                const QuadElem x(u1, v1);
                for (int u2 = -3; u2 <= 3; ++u2)
                    for (int v2 = -3; v2 <= 3; ++v2) {
                        if ((u2 - v2) % 2 != 0)
                            continue;
                        const QuadElem y(u2, v2);
                        ASSERT_EQ(norm(mul(x, y, D), D), norm(x, D) * norm(y, D));
                    }
                EXPECT_EQ(mul(x, conjugate(x), D), QuadElem::rational(norm(x, D)));
            }
    }
}

TEST(QuadElemTest, BasisRoundTrip)
{
    for (int a = -4; a <= 4; ++a)
        for (int b = -4; b <= 4; ++b) {
            const QuadElem x = QuadElem::from_basis(a, b);
            const auto [a2, b2] = x.to_basis();
            EXPECT_EQ(a2, a);
            EXPECT_EQ(b2, b);
        }
}

TEST(QuadElemTest, TextRoundTrip)
{
    for (const QuadElem& x : {QuadElem(1, 1), QuadElem(3, -5), QuadElem(-4, 0), QuadElem(0, 2)})
        EXPECT_EQ(parse_elem(format_elem(x)), x);
    EXPECT_EQ(parse_elem("+3+1*sqrtD/2"), QuadElem(3, 1));
    EXPECT_THROW(parse_elem("3+sqrt5"), DomainError);
}
