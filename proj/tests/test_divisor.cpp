#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "quadrep/divisor.hpp"

using namespace quadrep;

namespace {

GenusFingerprint fp_of(std::int64_t D, const std::string& ideal = "ok")
{
    const Discriminant disc(D);
    return genus_fingerprint(parse_ideal(disc, ideal));
}

std::vector<std::pair<std::int64_t, int>> plain(const GenusFingerprint& fp)
{
    std::vector<std::pair<std::int64_t, int>> out;
    for (const auto& [p, s] : fp.signs)
        out.emplace_back(p, s.value());
    return out;
}

} // namespace

TEST(DpAssign, Values)
{
    EXPECT_EQ(dp_assign(5, 5), 5);
    EXPECT_EQ(dp_assign(21, 3), -3);
    EXPECT_EQ(dp_assign(21, 7), -7);
    EXPECT_THROW(dp_assign(21, 5), DomainError);
}

TEST(DiscDecompositions, Values)
{
    const auto d5 = disc_decompositions(Discriminant(5));
    EXPECT_EQ(d5, (std::vector<DiscDecomposition>{{1, 5}, {5, 1}}));
    const auto d21 = disc_decompositions(Discriminant(21));
    EXPECT_EQ(d21, (std::vector<DiscDecomposition>{{1, 21}, {-3, -7}, {-7, -3}, {21, 1}}));
    const auto d105 = disc_decompositions(Discriminant(105));
    EXPECT_EQ(d105.size(), 8u);
    for (const auto& d : d105) {
        EXPECT_EQ(d.D1 * d.D2, 105);
        EXPECT_EQ(floor_mod(d.D1, 4), 1);
    }
}

TEST(SigmaDef, Values)
{
    const auto o5 = fp_of(5);
    const auto o21 = fp_of(21);
    for (double s : {-2.0, 0.0, 0.5, 3.0}) {
        EXPECT_DOUBLE_EQ(sigma_def({o5, 1, s}), 2.0);
        EXPECT_DOUBLE_EQ(sigma_def({o5, 2, s}), 0.0);
        EXPECT_DOUBLE_EQ(sigma_def({o21, 1, s}), 4.0);
    }
    EXPECT_THROW(sigma_def({o5, 0, 1.0}), DomainError);
}

TEST(SigmaDef, MatchesDefinitionOracle)
{
    for (std::int64_t D : {5, 21, 33, 105})
        for (const auto& fp : possible_fingerprints(Discriminant(D)))
            for (std::int64_t m = -40; m <= 40; ++m) {
                if (m == 0)
                    continue;
                for (double s : {-1.5, 0.0, 1.0, 2.5}) {
                    const double ours = sigma_def({fp, m, s});
                    const double ref = oracle::sigma(plain(fp), m, s);
                    EXPECT_NEAR(ours, ref, 1e-9 * std::max(1.0, std::abs(ref))) << D << " m=" << m << " s=" << s;
                }
            }
}

TEST(SigmaForms, Values)
{
    const auto o21 = fp_of(21);
    EXPECT_DOUBLE_EQ(sigma_decomp({o21, 1, 0.0}), 4.0);
    EXPECT_DOUBLE_EQ(sigma_euler({o21, 1, 0.0}), 4.0);
    const auto o5 = fp_of(5);
    EXPECT_DOUBLE_EQ(sigma_decomp({o5, 2, 1.7}), 0.0);
    EXPECT_NEAR(sigma_decomp({o5, 4, 1.0}), sigma_def({o5, 4, 1.0}), 1e-12);
    const auto p5 = fp_of(21, "prime:5,1");
    for (double s : {-2.0, 0.3, 1.0, 4.0})
        EXPECT_NEAR(sigma_euler({p5, 5, s}), sigma_def({p5, 5, s}), 1e-12 * std::max(1.0, std::abs(sigma_def({p5, 5, s}))));
}

TEST(SigmaForms, MOneIsTwoToOmega)
{
    for (std::int64_t D : {5, 21, 105}) {
        const auto fp = fp_of(D);
        const double expected = std::ldexp(1.0, static_cast<int>(fp.signs.size()));
        for (double s : {-1.0, 0.0, 2.0}) {
            EXPECT_DOUBLE_EQ(sigma_euler({fp, 1, s}), expected);
            EXPECT_DOUBLE_EQ(sigma_def({fp, 1, s}), expected);
        }
    }
}

TEST(SigmaForms, DegenerateUnramifiedFactorUsesLimit)
{
    // chi_21(5) = +1 and s = 0: factor 1 + 1 + 1 for 5^2
    const auto o21 = fp_of(21);
    EXPECT_NEAR(sigma_euler({o21, 25, 0.0}), sigma_def({o21, 25, 0.0}), 1e-12);
    EXPECT_TRUE(std::isfinite(sigma_euler({o21, 25, 0.0})));
}

TEST(RamifiedSignProduct, Values)
{
    const auto o21 = fp_of(21);
    auto [l1, r1] = ramified_sign_product(o21, 1, 7);
    EXPECT_EQ(l1, Sign::plus());
    EXPECT_EQ(r1, Sign::plus());
    auto [l2, r2] = ramified_sign_product(o21, -7, 1);
    EXPECT_EQ(l2, Sign::plus());
    EXPECT_EQ(r2, Sign::plus());
    auto [l3, r3] = ramified_sign_product(o21, -7, -1);
    EXPECT_EQ(l3, r3);
    EXPECT_EQ(kronecker(-7, -1), Sign::minus());
    EXPECT_THROW(ramified_sign_product(o21, 7, 1), DomainError);
    EXPECT_THROW(ramified_sign_product(o21, 5, 1), DomainError);
}

TEST(SigmaVanishes, Values)
{
    EXPECT_TRUE(sigma_vanishes(fp_of(5), 2));
    EXPECT_FALSE(sigma_vanishes(fp_of(5), 1));
    EXPECT_TRUE(sigma_vanishes(fp_of(21), 5));
    EXPECT_FALSE(sigma_vanishes(fp_of(21, "prime:5,1"), 5));
}

TEST(SigmaVanishes, IdenticallyZeroExactlyWhenPredicted)
{
    for (std::int64_t D : {5, 21, 33, 105})
        for (const auto& fp : possible_fingerprints(Discriminant(D)))
            for (std::int64_t m = -30; m <= 30; ++m) {
                if (m == 0)
                    continue;
                bool all_zero = true;
                for (double s : {0.37, 1.0, 2.2})
                    all_zero = all_zero && std::abs(sigma_def({fp, m, s})) < 1e-12;
                EXPECT_EQ(sigma_vanishes(fp, m), all_zero) << D << " " << fp.str() << " m=" << m;
            }
}

TEST(DFactor, ProductEqualsDecompositionSum)
{
    for (std::int64_t D : {21, 33, 105})
        for (const auto& fp : possible_fingerprints(Discriminant(D)))
            for (std::int64_t m = -30; m <= 30; ++m) {
                if (m == 0)
                    continue;
                for (double s : {0.0, 1.0, 2.0})
                    EXPECT_NEAR(d_factor_product(fp, m, s), d_factor_decomp_sum(fp, m, s),
                                1e-12 * std::max(1.0, std::abs(d_factor_product(fp, m, s))));
            }
}
