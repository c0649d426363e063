#include "norbrack/curve_core.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace norbrack {

namespace {

constexpr double kDegenerateSpeed = 1e-10;
constexpr double kSphereNormTol = 1e-12;

Eigen::Index idx(std::size_t k) { return static_cast<Eigen::Index>(k); }

void require_finite(const Eigen::Ref<const Eigen::MatrixXd>& m, const char* what)
{
    if (!m.allFinite())
        throw InvalidArgument(std::string(what) + " contains non-finite samples");
}

} // namespace

const char* to_string(Ambient ambient)
{
    return ambient == Ambient::plane ? "plane" : "sphere";
}

Ambient ambient_from_string(const std::string& name)
{
    if (name == "plane")
        return Ambient::plane;
    if (name == "sphere")
        return Ambient::sphere;
    throw InvalidArgument("unknown ambient '" + name + "'");
}

int ambient_dim(Ambient ambient) { return ambient == Ambient::plane ? 2 : 3; }

void validate_grid(std::size_t n)
{
    if (n < 8 || n % 2 != 0)
        throw InvalidGrid("grid size must be even and at least 8, got " + std::to_string(n));
}

double grid_spacing(std::size_t n) { return 2.0 * std::numbers::pi / static_cast<double>(n); }

double grid_theta(std::size_t n, std::size_t k) { return grid_spacing(n) * static_cast<double>(k); }

void require_same_grid(std::size_t lhs, std::size_t rhs, const char* context)
{
    if (lhs != rhs)
        throw GridMismatch(std::string(context) + ": " + std::to_string(lhs) + " vs " + std::to_string(rhs) +
                           " nodes");
}

// ---- PeriodicScalarField ------------------------------------------------------

PeriodicScalarField::PeriodicScalarField(Eigen::VectorXd samples)
    : samples_(std::move(samples))
{
    validate_grid(static_cast<std::size_t>(samples_.size()));
    require_finite(samples_, "scalar field");
}

PeriodicScalarField PeriodicScalarField::constant(std::size_t n, double value)
{
    validate_grid(n);
    return PeriodicScalarField(Eigen::VectorXd::Constant(idx(n), value));
}

PeriodicScalarField operator+(const PeriodicScalarField& lhs, const PeriodicScalarField& rhs)
{
    require_same_grid(lhs.grid_n(), rhs.grid_n(), "field sum");
    return PeriodicScalarField(lhs.samples_ + rhs.samples_);
}

PeriodicScalarField operator-(const PeriodicScalarField& lhs, const PeriodicScalarField& rhs)
{
    require_same_grid(lhs.grid_n(), rhs.grid_n(), "field difference");
    return PeriodicScalarField(lhs.samples_ - rhs.samples_);
}

PeriodicScalarField operator*(const PeriodicScalarField& lhs, const PeriodicScalarField& rhs)
{
    require_same_grid(lhs.grid_n(), rhs.grid_n(), "field product");
    return PeriodicScalarField(lhs.samples_.cwiseProduct(rhs.samples_));
}

PeriodicScalarField operator*(double scale, const PeriodicScalarField& field)
{
    return PeriodicScalarField(scale * field.samples_);
}

PeriodicScalarField operator-(const PeriodicScalarField& field) { return PeriodicScalarField(-field.samples_); }

// ---- DiscreteImmersion ----------------------------------------------------------

DiscreteImmersion::DiscreteImmersion(Points points, Ambient ambient)
    : points_(std::move(points))
    , ambient_(ambient)
{
    validate_grid(grid_n());
    require_finite(points_, "curve");
    if (ambient_ == Ambient::plane) {
        if (points_.col(2).cwiseAbs().maxCoeff() != 0.0)
            throw InvalidArgument("plane curve has a nonzero z coordinate");
    } else {
        const double worst = (points_.rowwise().norm().array() - 1.0).abs().maxCoeff();
        if (worst > kSphereNormTol)
            throw InvalidArgument("sphere curve point off the unit sphere by " + std::to_string(worst));
    }
    const Points d = project_tangent(ambient_, points_, deriv_theta(points_));
    const double slowest = d.rowwise().norm().minCoeff();
    if (!(slowest > kDegenerateSpeed))
        throw ImmersionDegenerate("minimum speed " + std::to_string(slowest));
}

DiscreteImmersion DiscreteImmersion::plane(const Eigen::Ref<const Eigen::MatrixX2d>& xy)
{
    Points p = Points::Zero(xy.rows(), 3);
    p.leftCols<2>() = xy;
    return DiscreteImmersion(std::move(p), Ambient::plane);
}

DiscreteImmersion DiscreteImmersion::sphere_retract(Points points)
{
    points.rowwise().normalize();
    return DiscreteImmersion(std::move(points), Ambient::sphere);
}

Points project_tangent(Ambient ambient, const Points& points, const Points& vectors)
{
    require_same_grid(static_cast<std::size_t>(points.rows()), static_cast<std::size_t>(vectors.rows()),
                      "tangent projection");
    Points out = vectors;
    if (ambient == Ambient::plane) {
        out.col(2).setZero();
        return out;
    }
    for (Eigen::Index k = 0; k < out.rows(); ++k) {
        const Eigen::RowVector3d x = points.row(k);
        out.row(k) -= out.row(k).dot(x) * x;
    }
    return out;
}

// ---- ImmersionTangent -----------------------------------------------------------

ImmersionTangent::ImmersionTangent(const DiscreteImmersion& base, Points vectors)
    : vectors_(std::move(vectors))
{
    require_same_grid(base.grid_n(), grid_n(), "tangent at immersion");
    require_finite(vectors_, "tangent field");
    vectors_ = project_tangent(base.ambient(), base.points(), vectors_);
}

ImmersionTangent ImmersionTangent::zero(const DiscreteImmersion& base)
{
    return ImmersionTangent(Points::Zero(idx(base.grid_n()), 3));
}

double ImmersionTangent::max_norm() const { return vectors_.rowwise().norm().maxCoeff(); }

ImmersionTangent operator+(const ImmersionTangent& lhs, const ImmersionTangent& rhs)
{
    require_same_grid(lhs.grid_n(), rhs.grid_n(), "tangent sum");
    return ImmersionTangent(Points(lhs.vectors_ + rhs.vectors_));
}

ImmersionTangent operator-(const ImmersionTangent& lhs, const ImmersionTangent& rhs)
{
    require_same_grid(lhs.grid_n(), rhs.grid_n(), "tangent difference");
    return ImmersionTangent(Points(lhs.vectors_ - rhs.vectors_));
}

ImmersionTangent operator*(double scale, const ImmersionTangent& h)
{
    return ImmersionTangent(Points(scale * h.vectors_));
}

ImmersionTangent operator*(const PeriodicScalarField& scale, const ImmersionTangent& h)
{
    require_same_grid(scale.grid_n(), h.grid_n(), "scaled tangent");
    return ImmersionTangent(Points(h.vectors_.array().colwise() * scale.samples().array()));
}

double max_distance(const ImmersionTangent& lhs, const ImmersionTangent& rhs)
{
    require_same_grid(lhs.grid_n(), rhs.grid_n(), "tangent distance");
    return (lhs.vectors() - rhs.vectors()).rowwise().norm().maxCoeff();
}

PeriodicScalarField pointwise_dot(const Points& lhs, const Points& rhs)
{
    require_same_grid(static_cast<std::size_t>(lhs.rows()), static_cast<std::size_t>(rhs.rows()), "pointwise dot");
    return PeriodicScalarField(lhs.cwiseProduct(rhs).rowwise().sum());
}

PeriodicScalarField pointwise_dot(const ImmersionTangent& lhs, const ImmersionTangent& rhs)
{
    return pointwise_dot(lhs.vectors(), rhs.vectors());
}

// ---- calculus ---------------------------------------------------------------------

PeriodicScalarField deriv_theta(const PeriodicScalarField& u)
{
    const std::size_t n = u.grid_n();
    const double scale = 1.0 / (12.0 * grid_spacing(n));
    const Eigen::VectorXd& s = u.samples();
    Eigen::VectorXd d(idx(n));
    for (std::size_t k = 0; k < n; ++k) {
        const double p1 = s[idx((k + 1) % n)];
        const double p2 = s[idx((k + 2) % n)];
        const double m1 = s[idx((k + n - 1) % n)];
        const double m2 = s[idx((k + n - 2) % n)];
        d[idx(k)] = (8.0 * (p1 - m1) - (p2 - m2)) * scale;
    }
    return PeriodicScalarField(std::move(d));
}

Points deriv_theta(const Points& points)
{
    const auto n = static_cast<std::size_t>(points.rows());
    validate_grid(n);
    const double scale = 1.0 / (12.0 * grid_spacing(n));
    Points d(idx(n), 3);
    for (std::size_t k = 0; k < n; ++k) {
        d.row(idx(k)) = (8.0 * (points.row(idx((k + 1) % n)) - points.row(idx((k + n - 1) % n))) -
                         (points.row(idx((k + 2) % n)) - points.row(idx((k + n - 2) % n)))) *
                        scale;
    }
    return d;
}

ImmersionTangent velocity(const DiscreteImmersion& c) { return ImmersionTangent(c, deriv_theta(c.points())); }

PeriodicScalarField speed(const DiscreteImmersion& c)
{
    PeriodicScalarField s(velocity(c).vectors().rowwise().norm());
    if (!(s.min() > kDegenerateSpeed))
        throw ImmersionDegenerate("minimum speed " + std::to_string(s.min()));
    return s;
}

Frame frame(const DiscreteImmersion& c)
{
    const ImmersionTangent vel = velocity(c);
    const PeriodicScalarField s = speed(c);
    Points v = vel.vectors().array().colwise() / s.samples().array();
    Points n(v.rows(), 3);
    for (Eigen::Index k = 0; k < v.rows(); ++k) {
        const Vec3 t = v.row(k).transpose();
        if (c.ambient() == Ambient::plane)
            n.row(k) = Eigen::RowVector3d(-t.y(), t.x(), 0.0);
        else
            n.row(k) = c.point(static_cast<std::size_t>(k)).cross(t).transpose();
    }
    return Frame{ImmersionTangent(c, std::move(v)), ImmersionTangent(c, std::move(n))};
}

PeriodicScalarField arclen_deriv(const DiscreteImmersion& c, const PeriodicScalarField& u)
{
    require_same_grid(c.grid_n(), u.grid_n(), "arclength derivative");
    return PeriodicScalarField(deriv_theta(u).samples().cwiseQuotient(speed(c).samples()));
}

Points arclen_deriv(const DiscreteImmersion& c, const Points& vectors)
{
    require_same_grid(c.grid_n(), static_cast<std::size_t>(vectors.rows()), "arclength derivative");
    return deriv_theta(vectors).array().colwise() / speed(c).samples().array();
}

PeriodicScalarField curvature(const DiscreteImmersion& c)
{
    const Frame f = frame(c);
    const Points dv = project_tangent(c.ambient(), c.points(), arclen_deriv(c, f.tangent.vectors()));
    return pointwise_dot(dv, f.normal.vectors());
}

TangentNormalSplit split_tangent_normal(const DiscreteImmersion& c, const ImmersionTangent& h)
{
    require_same_grid(c.grid_n(), h.grid_n(), "tangent/normal split");
    const Frame f = frame(c);
    const PeriodicScalarField s = speed(c);
    PeriodicScalarField m(pointwise_dot(h, f.tangent).samples().cwiseQuotient(s.samples()));
    return TangentNormalSplit{std::move(m), pointwise_dot(h, f.normal)};
}

ImmersionTangent recombine(const DiscreteImmersion& c, const TangentNormalSplit& split)
{
    const Frame f = frame(c);
    return split.tangential_coeff * velocity(c) + split.normal_coeff * f.normal;
}

ImmersionTangent random_tangent(const DiscreteImmersion& c, std::uint64_t seed, int modes)
{
    UniformSource rng(seed);
    const std::size_t n = c.grid_n();
    Points w = Points::Zero(idx(n), 3);
    for (int dim = 0; dim < 3; ++dim) {
        const double c0 = rng.next();
        for (std::size_t k = 0; k < n; ++k)
            w(idx(k), dim) = c0;
        for (int j = 1; j <= modes; ++j) {
            const double a = rng.next() / j;
            const double b = rng.next() / j;
            for (std::size_t k = 0; k < n; ++k) {
                const double t = grid_theta(n, k);
                w(idx(k), dim) += a * std::cos(j * t) + b * std::sin(j * t);
            }
        }
    }
    return ImmersionTangent(c, std::move(w));
}

// ---- generators -------------------------------------------------------------------

double UniformSource::next()
{
    // 53 high bits -> [0, 1) -> [-1, 1)
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
}

DiscreteImmersion circle(std::size_t n, double radius) { return ellipse(n, radius, radius); }

DiscreteImmersion ellipse(std::size_t n, double semi_x, double semi_y)
{
    validate_grid(n);
    Eigen::MatrixX2d xy(idx(n), 2);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = grid_theta(n, k);
        xy(idx(k), 0) = semi_x * std::cos(t);
        xy(idx(k), 1) = semi_y * std::sin(t);
    }
    return DiscreteImmersion::plane(xy);
}

DiscreteImmersion random_fourier_curve(std::uint64_t seed, std::size_t n, int modes, double decay, double amplitude)
{
    validate_grid(n);
    if (modes < 1)
        throw InvalidArgument("random_fourier_curve needs at least one mode");
    if (!(decay > 1.0))
        throw InvalidArgument("random_fourier_curve needs decay > 1");

    UniformSource rng(seed);
    Eigen::MatrixX2d perturbation = Eigen::MatrixX2d::Zero(idx(n), 2);
    for (int j = 1; j <= modes; ++j) {
        const double weight = std::pow(static_cast<double>(j), -decay);
        for (int dim = 0; dim < 2; ++dim) {
            const double a = weight * rng.next();
            const double b = weight * rng.next();
            for (std::size_t k = 0; k < n; ++k) {
                const double t = grid_theta(n, k);
                perturbation(idx(k), dim) += a * std::cos(j * t) + b * std::sin(j * t);
            }
        }
    }

    Eigen::MatrixX2d base(idx(n), 2);
    for (std::size_t k = 0; k < n; ++k) {
        base(idx(k), 0) = std::cos(grid_theta(n, k));
        base(idx(k), 1) = std::sin(grid_theta(n, k));
    }

    double scale = amplitude;
    for (int attempt = 0; attempt < 100; ++attempt, scale *= 0.5) {
        const Eigen::MatrixX2d xy = base + scale * perturbation;
        Points p = Points::Zero(idx(n), 3);
        p.leftCols<2>() = xy;
        if (deriv_theta(p).rowwise().norm().minCoeff() >= 0.1)
            return DiscreteImmersion(std::move(p), Ambient::plane);
    }
    throw GenerationFailed("no immersed rescaling after 100 attempts (seed " + std::to_string(seed) + ")");
}

DiscreteImmersion great_circle(std::size_t n) { return small_circle(n, 0.0); }

DiscreteImmersion small_circle(std::size_t n, double height)
{
    validate_grid(n);
    if (!(std::abs(height) < 1.0))
        throw InvalidArgument("small circle height must lie in (-1, 1)");
    const double r = std::sqrt(1.0 - height * height);
    Points p(idx(n), 3);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = grid_theta(n, k);
        p.row(idx(k)) << r * std::cos(t), r * std::sin(t), height;
    }
    return DiscreteImmersion::sphere_retract(std::move(p));
}

DiscreteImmersion sphere_wave(std::size_t n, double amplitude, int wave)
{
    validate_grid(n);
    Points p(idx(n), 3);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = grid_theta(n, k);
        p.row(idx(k)) << std::cos(t), std::sin(t), amplitude * std::sin(wave * t);
    }
    return DiscreteImmersion::sphere_retract(std::move(p));
}

} // namespace norbrack
