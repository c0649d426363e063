#include <gtest/gtest.h>

#include <cmath>

#include "norbrack/arc_bundle.hpp"
#include "norbrack/suites.hpp"

using namespace norbrack;

namespace {

constexpr std::size_t kN = 256;

PeriodicScalarField cosk(int k, std::size_t n = kN)
{
    return PeriodicScalarField::from_function(n, [k](double t) { return std::cos(k * t); });
}

PeriodicScalarField sink(int k, std::size_t n = kN)
{
    return PeriodicScalarField::from_function(n, [k](double t) { return std::sin(k * t); });
}

ImmersionTangent translation(const DiscreteImmersion& c, double x, double y)
{
    Points w = Points::Zero(static_cast<Eigen::Index>(c.grid_n()), 3);
    w.col(0).setConstant(x);
    w.col(1).setConstant(y);
    return ImmersionTangent(c, w);
}

} // namespace

TEST(ArcDefect, Examples)
{
    const DiscreteImmersion c = circle(kN);
    const Frame f = frame(c);

    const ArcDefect t = arc_defect(c, translation(c, 1.0, -2.0));
    EXPECT_LE(t.u.max_abs(), 1e-14);
    EXPECT_LE(t.defect_norm, 1e-14);

    const ArcDefect n = arc_defect(c, f.normal);
    EXPECT_LE((n.u - PeriodicScalarField::constant(kN, -1.0)).max_abs(), 1e-7);
    EXPECT_LE(n.defect_norm, 1e-7);

    const ArcDefect w = arc_defect(c, cosk(1) * f.normal);
    EXPECT_LE((w.u + cosk(1)).max_abs(), 1e-6);
    EXPECT_LE((w.defect - sink(1)).max_abs(), 1e-6);
    EXPECT_NEAR(w.defect_norm, 1.0, 1e-6);
}

TEST(ArcDefect, SphereRejected)
{
    const DiscreteImmersion g = great_circle(32);
    EXPECT_THROW(arc_defect(g, frame(g).normal), InvalidArgument);
}

TEST(ProjectToArc, FixesArcMembers)
{
    const DiscreteImmersion c = circle(kN);
    const ImmersionTangent n = frame(c).normal;
    EXPECT_LE(max_distance(project_to_arc(c, n), n), 1e-10);
}

TEST(ProjectToArc, CosNormalOnCircle)
{
    const DiscreteImmersion c = circle(kN);
    const Frame f = frame(c);
    const ImmersionTangent p = project_to_arc(c, cosk(1) * f.normal);
    EXPECT_LE(max_distance(p, cosk(1) * f.normal + sink(1) * f.tangent), 1e-6);
    EXPECT_LE(arc_defect(c, p).defect_norm, 1e-6);
}

TEST(ProjectToArc, DefectLinearityIdempotence)
{
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const DiscreteImmersion c = random_fourier_curve(seed, kN, 6, 3);
        const ImmersionTangent h1 = random_tangent(c, seed + 10, 6);
        const ImmersionTangent h2 = random_tangent(c, seed + 20, 6);
        const ImmersionTangent p1 = project_to_arc(c, h1);
        EXPECT_LE(arc_defect(c, p1).defect_norm, 1e-6);
        EXPECT_LE(max_distance(project_to_arc(c, p1), p1), 1e-10);
        EXPECT_LE(max_distance(project_to_arc(c, h1 + h2), p1 + project_to_arc(c, h2)), 1e-10);
    }
}

TEST(FlowArc, TranslationIsRigid)
{
    const DiscreteImmersion c = ellipse(64, 2, 1);
    const DiscreteImmersion moved = flow_arc(c, CurveField::constant(Vec3(1, 1, 0)), 0.7, 10);
    EXPECT_LE((speed(moved) - speed(c)).max_abs(), 1e-12);
    EXPECT_EQ(flow_arc(c, CurveField::normal(), 0.0, 10).points(), c.points());
}

TEST(FlowArc, CircleAlongNormalStaysRound)
{
    const DiscreteImmersion c1 = flow_arc(circle(kN), CurveField::normal(), 0.5, 100);
    const Eigen::ArrayXd r = c1.points().rowwise().norm().array();
    // n points inward on the counterclockwise circle.
    EXPECT_NEAR(r.mean(), 0.5, 1e-6);
    EXPECT_LE(r.maxCoeff() - r.minCoeff(), 1e-6);
}

TEST(LeafInvariant, RigidMotionAndScaling)
{
    const DiscreteImmersion c = random_fourier_curve(5, 128, 6, 3);
    const double ang = 0.4;
    Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
    rot.topLeftCorner<2, 2>() << std::cos(ang), -std::sin(ang), std::sin(ang), std::cos(ang);
    Points moved = 1.7 * c.points() * rot.transpose();
    moved.col(0).array() += 0.3;
    EXPECT_LE(leaf_invariant(c, DiscreteImmersion(moved, Ambient::plane)), 1e-12);
    EXPECT_THROW(leaf_invariant(c, circle(64)), GridMismatch);
}

TEST(LeafInvariant, ProjectedFlowsStayOnLeaf)
{
    const DiscreteImmersion c0 = random_fourier_curve(2, kN, 6, 3);
    for (const CurveField& f : {CurveField::normal(), CurveField::scaled_normal(0.5 * cosk(3)),
                                CurveField::scaled_normal(sink(2)) + CurveField::constant(Vec3(0, 1, 0))})
        EXPECT_LE(leaf_invariant(c0, flow_arc(c0, f, 0.3, 100)), 1e-5) << f.name();
}

TEST(LeafInvariant, NormalPerturbationLeavesLeaf)
{
    const DiscreteImmersion c0 = circle(kN);
    const Points moved = c0.points() + (0.1 * cosk(3) * frame(c0).normal).vectors();
    EXPECT_GE(leaf_invariant(c0, DiscreteImmersion(moved, Ambient::plane)), 1e-3);
}

TEST(LeafInvariant, UnprojectedFlowDrifts)
{
    const DiscreteImmersion c0 = circle(kN);
    EXPECT_GE(leaf_invariant(c0, integrate_flow(c0, CurveField::scaled_normal(cosk(3)), 0.3, 100)), 1e-2);
}

TEST(FrobeniusDefect, Examples)
{
    const DiscreteImmersion c = circle(kN);
    EXPECT_LE(frobenius_defect(c, CurveField::constant(Vec3(1, 0, 0)), CurveField::constant(Vec3(0, 1, 0)), 1e-4), 1e-8);
    EXPECT_LE(frobenius_defect(c, CurveField::normal(), CurveField::scaled_normal(cosk(1)), 1e-4), 1e-3);
    const DiscreteImmersion r = random_fourier_curve(4, kN, 6, 3);
    EXPECT_LE(frobenius_defect(r, CurveField::normal(), CurveField::scaled_tangent(PeriodicScalarField::constant(kN, 1.0)), 1e-4),
              1e-3);
}
