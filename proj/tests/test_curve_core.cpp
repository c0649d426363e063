#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "norbrack/curve_core.hpp"

using namespace norbrack;

namespace {

constexpr double kPi = std::numbers::pi;

double max_diff(const PeriodicScalarField& a, const PeriodicScalarField& b) { return (a - b).max_abs(); }

PeriodicScalarField field(std::size_t n, double (*fn)(double)) { return PeriodicScalarField::from_function(n, fn); }

Points rotate_rows(const Points& p, Eigen::Index shift)
{
    Points out(p.rows(), 3);
    for (Eigen::Index k = 0; k < p.rows(); ++k)
        out.row(k) = p.row((k + shift) % p.rows());
    return out;
}

Eigen::VectorXd rotate(const Eigen::VectorXd& v, Eigen::Index shift)
{
    Eigen::VectorXd out(v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k)
        out[k] = v[(k + shift) % v.size()];
    return out;
}

} // namespace

TEST(Grid, RejectsOddSmallAndZero)
{
    EXPECT_THROW(validate_grid(7), InvalidGrid);
    EXPECT_THROW(validate_grid(6), InvalidGrid);
    EXPECT_THROW(validate_grid(0), InvalidGrid);
    EXPECT_THROW(validate_grid(255), InvalidGrid);
    EXPECT_NO_THROW(validate_grid(8));
    EXPECT_DOUBLE_EQ(grid_theta(8, 2), kPi / 2);
    EXPECT_DOUBLE_EQ(grid_spacing(16), 2 * kPi / 16);
}

TEST(Grid, MismatchedFieldsThrow)
{
    const auto a = PeriodicScalarField::constant(8, 1.0);
    const auto b = PeriodicScalarField::constant(16, 1.0);
    EXPECT_THROW(a + b, GridMismatch);
    EXPECT_THROW(a * b, GridMismatch);
}

TEST(PeriodicScalarField, RejectsNonFinite)
{
    Eigen::VectorXd s = Eigen::VectorXd::Zero(8);
    s[3] = std::nan("");
    EXPECT_THROW(PeriodicScalarField{s}, InvalidArgument);
}

TEST(DerivTheta, ConstantGivesZero)
{
    EXPECT_EQ(deriv_theta(PeriodicScalarField::constant(64, 5.0)).max_abs(), 0.0);
}

TEST(DerivTheta, SineAndExpSine)
{
    const std::size_t n = 256;
    EXPECT_LE(max_diff(deriv_theta(field(n, [](double t) { return std::sin(t); })),
                       field(n, [](double t) { return std::cos(t); })),
              1e-7);
    EXPECT_LE(max_diff(deriv_theta(field(n, [](double t) { return std::exp(std::sin(t)); })),
                       field(n, [](double t) { return std::cos(t) * std::exp(std::sin(t)); })),
              1e-6);
}

TEST(DerivTheta, Linear)
{
    UniformSource rng(5);
    Eigen::VectorXd x(64), y(64);
    for (Eigen::Index k = 0; k < 64; ++k) {
        x[k] = rng.next();
        y[k] = rng.next();
    }
    const PeriodicScalarField u(x), w(y);
    const double alpha = 0.7, beta = -2.3;
    EXPECT_LE(max_diff(deriv_theta(alpha * u + beta * w), alpha * deriv_theta(u) + beta * deriv_theta(w)), 1e-12);
}

TEST(DerivTheta, FourthOrderConvergence)
{
    // Least-squares slope of log error against log N for sin(3 theta).
    std::vector<double> lx, ly;
    for (std::size_t n : {64, 128, 256, 512}) {
        const auto u = PeriodicScalarField::from_function(n, [](double t) { return std::sin(3 * t); });
        const auto du = PeriodicScalarField::from_function(n, [](double t) { return 3 * std::cos(3 * t); });
        lx.push_back(std::log(static_cast<double>(n)));
        ly.push_back(std::log(max_diff(deriv_theta(u), du)));
    }
    const double mx = (lx[0] + lx[1] + lx[2] + lx[3]) / 4, my = (ly[0] + ly[1] + ly[2] + ly[3]) / 4;
    double sxy = 0, sxx = 0;
    for (int i = 0; i < 4; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    EXPECT_GE(-sxy / sxx, 3.8);
}

TEST(Speed, CircleEllipseRadius)
{
    const std::size_t n = 256;
    EXPECT_LE(max_diff(speed(circle(n)), PeriodicScalarField::constant(n, 1.0)), 1e-7);
    EXPECT_LE(max_diff(speed(circle(n, 3.0)), PeriodicScalarField::constant(n, 3.0)), 1e-7);
    const auto analytic = field(n, [](double t) { return std::sqrt(4 * std::sin(t) * std::sin(t) + std::cos(t) * std::cos(t)); });
    EXPECT_LE(max_diff(speed(ellipse(n, 2, 1)), analytic), 1e-6);
}

TEST(Frame, UnitCircle)
{
    const std::size_t n = 128;
    const Frame f = frame(circle(n));
    for (std::size_t k = 0; k < n; ++k) {
        const double t = grid_theta(n, k);
        EXPECT_LE((f.tangent.vector(k) - Vec3(-std::sin(t), std::cos(t), 0)).norm(), 1e-7);
        EXPECT_LE((f.normal.vector(k) - Vec3(-std::cos(t), -std::sin(t), 0)).norm(), 1e-7);
    }
}

TEST(Frame, GreatCircleNormalIsPole)
{
    const std::size_t n = 64;
    const Frame f = frame(great_circle(n));
    for (std::size_t k = 0; k < n; ++k) {
        const double t = grid_theta(n, k);
        EXPECT_LE((f.tangent.vector(k) - Vec3(-std::sin(t), std::cos(t), 0)).norm(), 1e-5);
        EXPECT_LE((f.normal.vector(k) - Vec3(0, 0, 1)).norm(), 1e-12);
    }
}

TEST(Frame, OrthonormalOnRandomCurves)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        for (const DiscreteImmersion& c : {random_fourier_curve(seed, 128, 6, 3), sphere_wave(128, 0.2, 3)}) {
            const Frame f = frame(c);
            for (std::size_t k = 0; k < c.grid_n(); ++k) {
                EXPECT_NEAR(f.tangent.vector(k).norm(), 1.0, 1e-10);
                EXPECT_NEAR(f.normal.vector(k).norm(), 1.0, 1e-10);
                EXPECT_NEAR(f.tangent.vector(k).dot(f.normal.vector(k)), 0.0, 1e-10);
            }
        }
    }
}

TEST(ArclenDeriv, Circles)
{
    const std::size_t n = 256;
    const auto s = field(n, [](double t) { return std::sin(t); });
    const auto cs = field(n, [](double t) { return std::cos(t); });
    EXPECT_LE(max_diff(arclen_deriv(circle(n), s), cs), 1e-7);
    EXPECT_LE(max_diff(arclen_deriv(circle(n, 2.0), s), 0.5 * cs), 1e-7);
    EXPECT_EQ(arclen_deriv(ellipse(n, 2, 1), PeriodicScalarField::constant(n, 4.0)).max_abs(), 0.0);
}

TEST(Curvature, Examples)
{
    const std::size_t n = 256;
    EXPECT_LE(max_diff(curvature(circle(n)), PeriodicScalarField::constant(n, 1.0)), 1e-6);
    EXPECT_LE(max_diff(curvature(circle(n, 4.0)), PeriodicScalarField::constant(n, 0.25)), 1e-6);
    EXPECT_LE(curvature(great_circle(n)).max_abs(), 1e-10);
}

TEST(Split, NormalAndTangent)
{
    const std::size_t n = 128;
    const DiscreteImmersion c = circle(n);
    const Frame f = frame(c);
    const TangentNormalSplit sn = split_tangent_normal(c, f.normal);
    EXPECT_LE(sn.tangential_coeff.max_abs(), 1e-12);
    EXPECT_LE(max_diff(sn.normal_coeff, PeriodicScalarField::constant(n, 1.0)), 1e-12);
    const TangentNormalSplit sv = split_tangent_normal(c, f.tangent);
    EXPECT_LE(max_diff(sv.tangential_coeff, PeriodicScalarField::constant(n, 1.0)), 1e-6);
    EXPECT_LE(sv.normal_coeff.max_abs(), 1e-12);
}

TEST(Split, RecombinationIsIdentity)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const DiscreteImmersion c = random_fourier_curve(seed, 256, 6, 3);
        const ImmersionTangent h = random_tangent(c, seed + 100, 8);
        EXPECT_LE(max_distance(recombine(c, split_tangent_normal(c, h)), h), 1e-12);
    }
}

TEST(Equivariance, GridShiftRotatesSpeedAndCurvature)
{
    const DiscreteImmersion c = random_fourier_curve(3, 128, 6, 3);
    for (Eigen::Index shift : {1, 5, 64}) {
        const DiscreteImmersion shifted(rotate_rows(c.points(), shift), Ambient::plane);
        EXPECT_EQ(speed(shifted).samples(), rotate(speed(c).samples(), shift));
        EXPECT_EQ(curvature(shifted).samples(), rotate(curvature(c).samples(), shift));
    }
}

TEST(Immersion, RejectsDegenerateAndMalformed)
{
    EXPECT_THROW(DiscreteImmersion(Points::Zero(16, 3), Ambient::plane), ImmersionDegenerate);
    Points p = circle(16).points();
    p(3, 2) = 0.1;
    EXPECT_THROW(DiscreteImmersion(p, Ambient::plane), InvalidArgument);
    EXPECT_THROW(DiscreteImmersion(circle(16, 2.0).points(), Ambient::sphere), InvalidArgument);
    EXPECT_THROW(circle(15), InvalidGrid);
}

TEST(RandomFourierCurve, ZeroAmplitudeIsUnitCircle)
{
    const DiscreteImmersion c = random_fourier_curve(4, 64, 6, 3, 0.0);
    EXPECT_LE((c.points() - circle(64).points()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(RandomFourierCurve, DeterministicAndImmersed)
{
    const DiscreteImmersion a = random_fourier_curve(7, 256, 6, 3);
    const DiscreteImmersion b = random_fourier_curve(7, 256, 6, 3);
    EXPECT_EQ(a.points(), b.points());
    EXPECT_GE(speed(a).min(), 0.1);
    EXPECT_NE(a.points(), random_fourier_curve(8, 256, 6, 3).points());
}

TEST(SphereCurves, UnitNorm)
{
    for (const DiscreteImmersion& c : {great_circle(64), small_circle(64, 0.5), sphere_wave(64, 0.2, 3)})
        for (std::size_t k = 0; k < c.grid_n(); ++k)
            EXPECT_NEAR(c.point(k).norm(), 1.0, 1e-12);
    EXPECT_THROW(small_circle(64, 1.0), InvalidArgument);
}

TEST(ImmersionTangent, ProjectsOntoSphereTangentPlanes)
{
    const DiscreteImmersion c = small_circle(32, 0.5);
    const ImmersionTangent h(c, c.points());
    EXPECT_LE(h.max_norm(), 1e-15);
}
