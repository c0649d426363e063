#pragma once

// Arc-length preserving deformations of plane curves.
//
// h belongs to Arc at c when the speed-variation density u = <D_s h, v>
// (so that d/dt ds = u ds) is constant along the curve. Arc is integrable and
// its leaves are the curves whose speed functions are constant multiples of
// each other.

#include <vector>

#include "norbrack/immersion_calculus.hpp"

namespace norbrack {

struct ArcDefect {
    /// <D_s h, v>.
    PeriodicScalarField u;
    /// D_s u.
    PeriodicScalarField defect;
    double defect_norm;
};

ArcDefect arc_defect(const DiscreteImmersion& c, const ImmersionTangent& h);

/// h + psi v with psi the mean-zero arclength primitive of (u_bar - u), u_bar
/// the arclength average of u. Linear in h; fixes every h already in Arc.
ImmersionTangent project_to_arc(const DiscreteImmersion& c, const ImmersionTangent& h);

/// The curve field c -> project_to_arc(c, F(c)).
CurveField arc_projected(const CurveField& field);

/// RK4 flow of dc/dt = project_to_arc(c, F(c)).
DiscreteImmersion flow_arc(const DiscreteImmersion& c0, const CurveField& field, double t, int steps = 100,
                           std::vector<DiscreteImmersion>* frames = nullptr, int save_every = 1);

/// max_k |r_k - mean r| / mean r with r = speed(c1) / speed(c0).
double leaf_invariant(const DiscreteImmersion& c0, const DiscreteImmersion& c1);

/// Arc defect of the numeric bracket of the Arc-projected fields at c.
double frobenius_defect(const DiscreteImmersion& c, const CurveField& f1, const CurveField& f2, double eps);

} // namespace norbrack
