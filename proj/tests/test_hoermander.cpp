#include <gtest/gtest.h>

#include <cmath>

#include "norbrack/hoermander.hpp"
#include "norbrack/immersion_calculus.hpp"

using namespace norbrack;

TEST(TrigBasis, CountsAndLimits)
{
    EXPECT_EQ(trig_basis(16, 0).size(), 1u);
    EXPECT_EQ(trig_basis(16, 3).size(), 7u);
    // At the saturating K the Nyquist mode completes the basis.
    EXPECT_EQ(trig_basis(16, 7).size(), 16u);
    EXPECT_THROW(trig_basis(16, 8), BasisTooLarge);
    EXPECT_THROW(trig_basis(16, -1), BasisTooLarge);
}

TEST(NormalGenerators, SingleNormalAtKZero)
{
    const DiscreteImmersion c = circle(32);
    const auto g = normal_generators(c, 0);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_LE(max_distance(g[0], frame(c).normal), 1e-15);
}

TEST(NormalGenerators, OrthogonalToTangent)
{
    const DiscreteImmersion c = random_fourier_curve(3, 32, 6, 3);
    const ImmersionTangent v = frame(c).tangent;
    for (const ImmersionTangent& g : normal_generators(c, 10))
        EXPECT_LE(pointwise_dot(g, v).max_abs(), 1e-12);
}

TEST(BracketGenerators, CountAndExamples)
{
    const DiscreteImmersion c = circle(64);
    const auto g = bracket_generators(c, 3);
    EXPECT_EQ(g.size(), 7u * 6u / 2u);
    // Basis order is 1, cos t, sin t, ...; pair (1, cos t) gives D_s(cos t) v.
    const auto expected01 = arclen_deriv(c, PeriodicScalarField::from_function(64, [](double t) { return std::cos(t); }));
    EXPECT_LE(max_distance(g[0], expected01 * frame(c).tangent), 1e-15);
    // Pair (cos t, sin t) gives v on the unit circle; it is the index of (1, 2).
    const std::size_t m = 7;
    const std::size_t index12 = (m - 1) + 0;
    EXPECT_LE(max_distance(g[index12], frame(c).tangent), 1e-5);
}

TEST(VerifySpanning, UnitCircleN16)
{
    const SpanReport r = verify_spanning(circle(16), 7, 1e-8);
    EXPECT_TRUE(r.full);
    EXPECT_EQ(r.rank, 32u);
    EXPECT_EQ(r.num_generators, 16u + 16u * 15u / 2u);
    EXPECT_GE(r.sigma_min() / r.sigma_max(), 1e-8);
    EXPECT_TRUE(std::is_sorted(r.singular_values.rbegin(), r.singular_values.rend()));
}

TEST(VerifySpanning, RandomCurveSeed3)
{
    EXPECT_TRUE(verify_spanning(random_fourier_curve(3, 16, 6, 3), 7).full);
}

TEST(VerifySpanning, SmallKIsRankDeficient)
{
    const SpanReport r = verify_spanning(circle(32), 3);
    EXPECT_FALSE(r.full);
    // 2K+1 normal directions plus tangential trig polynomials of degree <= 2K.
    EXPECT_LE(r.rank, 7u + 13u);
}

TEST(VerifySpanning, NormalsAloneNeverExceedN)
{
    for (std::size_t n : {8, 16, 32}) {
        const DiscreteImmersion c = random_fourier_curve(1, n, 6, 3);
        for (int k : {0, 2, static_cast<int>(n / 2) - 1}) {
            const SpanReport r = rank_report(normal_generators(c, k), 1e-8);
            EXPECT_LE(r.rank, n);
        }
        EXPECT_EQ(rank_report(normal_generators(c, static_cast<int>(n / 2) - 1), 1e-8).rank, n);
    }
}

TEST(VerifySpanning, SphereRejected)
{
    EXPECT_THROW(verify_spanning(great_circle(16), 7), InvalidArgument);
}

TEST(RankReport, Errors)
{
    EXPECT_THROW(rank_report({}, 1e-8), InvalidArgument);
    EXPECT_THROW(rank_report(normal_generators(circle(16), 1), 0.0), InvalidArgument);
}

TEST(SynthesizeTangential, Examples)
{
    const std::size_t n = 256;
    const DiscreteImmersion c = circle(n);
    const auto zero = PeriodicScalarField::constant(n, 0.0);
    EXPECT_LE(bracket_sum(c, synthesize_tangential(c, zero)).max_norm(), 1e-14);

    const auto one = PeriodicScalarField::constant(n, 1.0);
    EXPECT_LE(max_distance(bracket_sum(c, synthesize_tangential(c, one)), frame(c).tangent), 1e-3);

    const DiscreteImmersion e = ellipse(n, 2, 1);
    const auto cos1 = PeriodicScalarField::from_function(n, [](double t) { return std::cos(t); });
    const ImmersionTangent target = cos1 * velocity(e);
    const double err = max_distance(bracket_sum(e, synthesize_tangential(e, cos1)), target);
    EXPECT_LE(err, 1e-3 * std::max(target.max_norm(), 1.0));
}
