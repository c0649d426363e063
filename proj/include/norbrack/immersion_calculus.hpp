#pragma once

// Calculus on the space of discrete immersions.
//
// A curve field assigns a tangent vector to every immersion. Derivatives in
// the immersion variable are central differences along straight-line
// perturbations, retracted to the sphere by normalization and projected back
// onto the sphere tangent planes; on the round sphere this is the Levi-Civita
// connection.

#include <functional>
#include <string>
#include <vector>

#include "norbrack/curve_core.hpp"

namespace norbrack {

class CurveField {
public:
    using Rule = std::function<ImmersionTangent(const DiscreteImmersion&)>;

    CurveField(std::string name, Rule rule);

    /// a * n.
    static CurveField scaled_normal(PeriodicScalarField a);
    /// The unit normal n.
    static CurveField normal();
    /// m * v with v the unit tangent.
    static CurveField scaled_tangent(PeriodicScalarField m);
    /// w at every node, projected to the sphere tangent planes on the sphere.
    static CurveField constant(Vec3 w);

    ImmersionTangent operator()(const DiscreteImmersion& c) const;
    const std::string& name() const { return name_; }

    friend CurveField operator+(const CurveField& lhs, const CurveField& rhs);
    friend CurveField operator*(double scale, const CurveField& field);

private:
    std::string name_;
    Rule rule_;
};

struct AmbientConnection {
    Ambient ambient;

    /// Identity in the plane, I - x x^T on the sphere.
    Eigen::Matrix3d projector(const Vec3& x) const;
    Points project(const DiscreteImmersion& c, const Points& vectors) const;
};

/// c + step * X, retracted to the sphere on the sphere.
DiscreteImmersion displace(const DiscreteImmersion& c, const Points& direction, double step);
DiscreteImmersion displace(const DiscreteImmersion& c, const ImmersionTangent& direction, double step);

/// (F(c + eps X) - F(c - eps X)) / (2 eps), projected at c.
/// Throws StepTooLarge when eps > 0.1 * min speed.
ImmersionTangent directional_derivative(const CurveField& field, const DiscreteImmersion& c,
                                        const ImmersionTangent& direction, double eps);

/// One classical Runge-Kutta step of dc/dt = F(c).
DiscreteImmersion rk4_step(const DiscreteImmersion& c, const CurveField& field, double dt);

/// (phi^Y_-eps o phi^X_-eps o phi^Y_eps o phi^X_eps (c) - c) / eps^2, each leg
/// a single RK4 step, averaged with the same loop run at -eps and projected
/// at c.
ImmersionTangent flow_commutator(const DiscreteImmersion& c, const CurveField& x, const CurveField& y, double eps);

/// max_k |nabla_X Y - nabla_Y X - [X, Y]_num| at c.
double torsion_defect(const DiscreteImmersion& c, const CurveField& x, const CurveField& y, double eps);

/// The variation of the unit normal along h: -(kappa m |c'| + D_s <h, n>) v.
ImmersionTangent variation_of_normal(const DiscreteImmersion& c, const ImmersionTangent& h);

/// [a n, b n] = (a D_s b - b D_s a) v.
ImmersionTangent bracket_closed_form(const DiscreteImmersion& c, const PeriodicScalarField& a,
                                     const PeriodicScalarField& b);

/// D_{an}(bn) - D_{bn}(an) by central differences.
ImmersionTangent bracket_numeric(const DiscreteImmersion& c, const PeriodicScalarField& a,
                                 const PeriodicScalarField& b, double eps);

/// D_{F(c)} G - D_{G(c)} F for arbitrary curve fields.
ImmersionTangent field_bracket_numeric(const DiscreteImmersion& c, const CurveField& f, const CurveField& g,
                                       double eps);

/// RK4 integration of dc/dt = F(c) over [0, t]. `frames` (if non-null)
/// receives c0 and every `save_every`-th state.
DiscreteImmersion integrate_flow(const DiscreteImmersion& c0, const CurveField& field, double t, int steps,
                                 std::vector<DiscreteImmersion>* frames = nullptr, int save_every = 1);

} // namespace norbrack
