#pragma once

// Finite-dimensional rank check that the normal fields a*n together with
// their first brackets [a n, b n] span every tangent vector of a discrete
// plane immersion, plus the constructive synthesis of tangential fields from
// brackets.

#include <vector>

#include "norbrack/curve_core.hpp"
#include "norbrack/oneform_span.hpp"

namespace norbrack {

struct SpanReport {
    std::size_t grid_n = 0;
    int modes = 0;
    std::size_t num_generators = 0;
    /// Descending.
    std::vector<double> singular_values;
    std::size_t rank = 0;
    bool full = false;
    double rank_tol = 0.0;

    double sigma_max() const { return singular_values.empty() ? 0.0 : singular_values.front(); }
    double sigma_min() const { return singular_values.empty() ? 0.0 : singular_values.back(); }
};

/// {1, cos t, sin t, ..., cos Kt, sin Kt}; at K = N/2 - 1 the Nyquist mode
/// cos(N t / 2) is appended so the basis spans all N-periodic samples.
std::vector<PeriodicScalarField> trig_basis(std::size_t grid_n, int modes);

/// T_j * n for every basis function. Throws BasisTooLarge when 2K + 1 > N.
std::vector<ImmersionTangent> normal_generators(const DiscreteImmersion& c, int modes);

/// bracket_closed_form(c, T_i, T_j) for all i < j.
std::vector<ImmersionTangent> bracket_generators(const DiscreteImmersion& c, int modes);

/// Singular values of the plane-coordinate matrix whose columns are the
/// generators, each normalized to unit length (zero columns stay zero).
SpanReport rank_report(const std::vector<ImmersionTangent>& generators, double rank_tol);

/// rank_report over normal_generators + bracket_generators. Plane only.
SpanReport verify_spanning(const DiscreteImmersion& c, int modes, double rank_tol = 1e-8);

/// Pairs (a_k, b_k) with sum coeff_k [a_k n, b_k n] = m * d(theta)c.
ABDecomposition synthesize_tangential(const DiscreteImmersion& c, const PeriodicScalarField& m);

/// sum coeff_k * bracket_closed_form(c, a_k, b_k).
ImmersionTangent bracket_sum(const DiscreteImmersion& c, const ABDecomposition& decomposition);

} // namespace norbrack
