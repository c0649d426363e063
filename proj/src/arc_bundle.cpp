#include "norbrack/arc_bundle.hpp"

#include "spectral.hpp"

namespace norbrack {

namespace {

constexpr int kProjectionPasses = 4;

void require_plane(const DiscreteImmersion& c, const char* what)
{
    if (c.ambient() != Ambient::plane)
        throw InvalidArgument(std::string(what) + " is defined for plane curves only");
}

Eigen::VectorXd speed_variation(const DiscreteImmersion& c, const Points& h, const Points& tangent)
{
    return pointwise_dot(arclen_deriv(c, h), tangent).samples();
}

} // namespace

ArcDefect arc_defect(const DiscreteImmersion& c, const ImmersionTangent& h)
{
    require_plane(c, "arc_defect");
    require_same_grid(c.grid_n(), h.grid_n(), "arc_defect");
    PeriodicScalarField u(speed_variation(c, h.vectors(), frame(c).tangent.vectors()));
    PeriodicScalarField defect = arclen_deriv(c, u);
    const double norm = defect.max_abs();
    return ArcDefect{std::move(u), std::move(defect), norm};
}

ImmersionTangent project_to_arc(const DiscreteImmersion& c, const ImmersionTangent& h)
{
    require_plane(c, "project_to_arc");
    require_same_grid(c.grid_n(), h.grid_n(), "project_to_arc");
    const Points tangent = frame(c).tangent.vectors();
    const Eigen::VectorXd s = speed(c).samples();
    const double length = s.sum();

    // psi solves the discrete equation <D_s(h + psi v), v> = const. The
    // first pass is the plain primitive; later passes remove what the
    // difference operator's product rule leaves behind. The pass count is
    // fixed so the map stays linear in h.
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(s.size());
    for (int pass = 0; pass < kProjectionPasses; ++pass) {
        const Points moved = h.vectors() + (tangent.array().colwise() * psi.array()).matrix();
        const Eigen::VectorXd u = speed_variation(c, moved, tangent);
        const double mean = u.dot(s) / length;
        psi += detail::invert_deriv_theta(((mean - u.array()) * s.array()).matrix());
    }
    return h + PeriodicScalarField(psi) * frame(c).tangent;
}

CurveField arc_projected(const CurveField& field)
{
    return CurveField("arc(" + field.name() + ")",
                      [field](const DiscreteImmersion& c) { return project_to_arc(c, field(c)); });
}

DiscreteImmersion flow_arc(const DiscreteImmersion& c0, const CurveField& field, double t, int steps,
                           std::vector<DiscreteImmersion>* frames, int save_every)
{
    require_plane(c0, "flow_arc");
    return integrate_flow(c0, arc_projected(field), t, steps, frames, save_every);
}

double leaf_invariant(const DiscreteImmersion& c0, const DiscreteImmersion& c1)
{
    require_plane(c0, "leaf_invariant");
    require_plane(c1, "leaf_invariant");
    require_same_grid(c0.grid_n(), c1.grid_n(), "leaf_invariant");
    const Eigen::ArrayXd ratio = speed(c1).samples().array() / speed(c0).samples().array();
    const double mean = ratio.mean();
    return (ratio - mean).abs().maxCoeff() / mean;
}

double frobenius_defect(const DiscreteImmersion& c, const CurveField& f1, const CurveField& f2, double eps)
{
    require_plane(c, "frobenius_defect");
    const ImmersionTangent bracket = field_bracket_numeric(c, arc_projected(f1), arc_projected(f2), eps);
    return arc_defect(c, bracket).defect_norm;
}

} // namespace norbrack
