#include "norbrack/immersion_calculus.hpp"

#include <string>

namespace norbrack {

CurveField::CurveField(std::string name, Rule rule)
    : name_(std::move(name))
    , rule_(std::move(rule))
{
    if (!rule_)
        throw InvalidArgument("curve field '" + name_ + "' has no rule");
}

CurveField CurveField::scaled_normal(PeriodicScalarField a)
{
    return CurveField("a*n", [a = std::move(a)](const DiscreteImmersion& c) {
        require_same_grid(c.grid_n(), a.grid_n(), "a*n field");
        return a * frame(c).normal;
    });
}

CurveField CurveField::normal()
{
    return CurveField("n", [](const DiscreteImmersion& c) { return frame(c).normal; });
}

CurveField CurveField::scaled_tangent(PeriodicScalarField m)
{
    return CurveField("m*v", [m = std::move(m)](const DiscreteImmersion& c) {
        require_same_grid(c.grid_n(), m.grid_n(), "m*v field");
        return m * frame(c).tangent;
    });
}

CurveField CurveField::constant(Vec3 w)
{
    return CurveField("constant", [w](const DiscreteImmersion& c) {
        Points p(static_cast<Eigen::Index>(c.grid_n()), 3);
        p.rowwise() = w.transpose();
        return ImmersionTangent(c, std::move(p));
    });
}

ImmersionTangent CurveField::operator()(const DiscreteImmersion& c) const
{
    ImmersionTangent h = rule_(c);
    require_same_grid(c.grid_n(), h.grid_n(), "curve field value");
    return h;
}

CurveField operator+(const CurveField& lhs, const CurveField& rhs)
{
    return CurveField("(" + lhs.name_ + ")+(" + rhs.name_ + ")",
                      [lhs, rhs](const DiscreteImmersion& c) { return lhs(c) + rhs(c); });
}

CurveField operator*(double scale, const CurveField& field)
{
    return CurveField(std::to_string(scale) + "*(" + field.name_ + ")",
                      [scale, field](const DiscreteImmersion& c) { return scale * field(c); });
}

Eigen::Matrix3d AmbientConnection::projector(const Vec3& x) const
{
    if (ambient == Ambient::plane)
        return Eigen::Matrix3d::Identity();
    return Eigen::Matrix3d::Identity() - x * x.transpose();
}

Points AmbientConnection::project(const DiscreteImmersion& c, const Points& vectors) const
{
    return project_tangent(ambient, c.points(), vectors);
}

DiscreteImmersion displace(const DiscreteImmersion& c, const Points& direction, double step)
{
    require_same_grid(c.grid_n(), static_cast<std::size_t>(direction.rows()), "displacement");
    Points moved = c.points() + step * direction;
    if (c.ambient() == Ambient::sphere)
        return DiscreteImmersion::sphere_retract(std::move(moved));
    moved.col(2).setZero();
    return DiscreteImmersion(std::move(moved), Ambient::plane);
}

DiscreteImmersion displace(const DiscreteImmersion& c, const ImmersionTangent& direction, double step)
{
    return displace(c, direction.vectors(), step);
}

ImmersionTangent directional_derivative(const CurveField& field, const DiscreteImmersion& c,
                                        const ImmersionTangent& direction, double eps)
{
    if (!(eps > 0.0))
        throw InvalidArgument("finite-difference step must be positive");
    const double limit = 0.1 * speed(c).min();
    if (eps > limit)
        throw StepTooLarge("eps = " + std::to_string(eps) + " exceeds 0.1 * min speed = " + std::to_string(limit));
    const ImmersionTangent forward = field(displace(c, direction, eps));
    const ImmersionTangent backward = field(displace(c, direction, -eps));
    return ImmersionTangent(c, (forward.vectors() - backward.vectors()) / (2.0 * eps));
}

DiscreteImmersion rk4_step(const DiscreteImmersion& c, const CurveField& field, double dt)
{
    const Points k1 = field(c).vectors();
    const Points k2 = field(displace(c, k1, 0.5 * dt)).vectors();
    const Points k3 = field(displace(c, k2, 0.5 * dt)).vectors();
    const Points k4 = field(displace(c, k3, dt)).vectors();
    return displace(c, Points((k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0), dt);
}

ImmersionTangent flow_commutator(const DiscreteImmersion& c, const CurveField& x, const CurveField& y, double eps)
{
    if (!(eps > 0.0))
        throw InvalidArgument("commutator step must be positive");
    auto loop = [&](double step) {
        DiscreteImmersion moved = rk4_step(c, x, step);
        moved = rk4_step(moved, y, step);
        moved = rk4_step(moved, x, -step);
        moved = rk4_step(moved, y, -step);
        return Points(moved.points() - c.points());
    };
    // The loops run with +eps and -eps share the eps^2 [X, Y] term and carry
    // opposite eps^3 terms.
    return ImmersionTangent(c, (loop(eps) + loop(-eps)) / (2.0 * eps * eps));
}

double torsion_defect(const DiscreteImmersion& c, const CurveField& x, const CurveField& y, double eps)
{
    const ImmersionTangent nabla_x_y = directional_derivative(y, c, x(c), eps);
    const ImmersionTangent nabla_y_x = directional_derivative(x, c, y(c), eps);
    const ImmersionTangent bracket = flow_commutator(c, x, y, eps);
    return (nabla_x_y - nabla_y_x - bracket).max_norm();
}

ImmersionTangent variation_of_normal(const DiscreteImmersion& c, const ImmersionTangent& h)
{
    const TangentNormalSplit split = split_tangent_normal(c, h);
    const PeriodicScalarField coeff =
        curvature(c) * split.tangential_coeff * speed(c) + arclen_deriv(c, split.normal_coeff);
    return -1.0 * (coeff * frame(c).tangent);
}

ImmersionTangent bracket_closed_form(const DiscreteImmersion& c, const PeriodicScalarField& a,
                                     const PeriodicScalarField& b)
{
    require_same_grid(a.grid_n(), b.grid_n(), "bracket coefficients");
    require_same_grid(c.grid_n(), a.grid_n(), "bracket coefficients");
    const PeriodicScalarField coeff = a * arclen_deriv(c, b) - b * arclen_deriv(c, a);
    return coeff * frame(c).tangent;
}

ImmersionTangent bracket_numeric(const DiscreteImmersion& c, const PeriodicScalarField& a,
                                 const PeriodicScalarField& b, double eps)
{
    require_same_grid(a.grid_n(), b.grid_n(), "bracket coefficients");
    return field_bracket_numeric(c, CurveField::scaled_normal(a), CurveField::scaled_normal(b), eps);
}

ImmersionTangent field_bracket_numeric(const DiscreteImmersion& c, const CurveField& f, const CurveField& g,
                                       double eps)
{
    return directional_derivative(g, c, f(c), eps) - directional_derivative(f, c, g(c), eps);
}

DiscreteImmersion integrate_flow(const DiscreteImmersion& c0, const CurveField& field, double t, int steps,
                                 std::vector<DiscreteImmersion>* frames, int save_every)
{
    if (steps < 1)
        throw InvalidArgument("flow needs at least one step");
    if (save_every < 1)
        throw InvalidArgument("save_every must be positive");
    if (t == 0.0) {
        if (frames)
            frames->push_back(c0);
        return c0;
    }
    const double dt = t / steps;
    DiscreteImmersion c = c0;
    if (frames)
        frames->push_back(c);
    for (int i = 1; i <= steps; ++i) {
        c = rk4_step(c, field, dt);
        if (frames && (i % save_every == 0 || i == steps))
            frames->push_back(c);
    }
    return c;
}

} // namespace norbrack
