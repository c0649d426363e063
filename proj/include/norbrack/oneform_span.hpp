#pragma once

// Writing one-forms on the circle as finite sums  sum_k c_k (a_k db_k - b_k da_k).
//
// A form alpha is localized with a smooth partition of unity subordinate to
// four chart arcs, written in each chart as f dg with g a global coordinate
// function, and every f dg is split into a positive part, which has an exact
// (a, b) pair, plus a multiple of the exact form dg.

#include <array>
#include <numbers>
#include <vector>

#include "norbrack/curve_core.hpp"

namespace norbrack {

/// Samples of alpha(d/dtheta).
class OneFormSamples {
public:
    explicit OneFormSamples(Eigen::VectorXd samples);

    std::size_t grid_n() const { return static_cast<std::size_t>(samples_.size()); }
    const Eigen::VectorXd& samples() const { return samples_; }

private:
    Eigen::VectorXd samples_;
};

struct ABTerm {
    double coeff;
    PeriodicScalarField a;
    PeriodicScalarField b;
};

struct ABDecomposition {
    std::vector<ABTerm> terms;

    /// sum coeff * (a db - b da), evaluated with deriv_theta. Zero form on
    /// `grid_n` nodes when there are no terms.
    OneFormSamples reconstruct(std::size_t grid_n) const;
};

/// ||reconstruct(D) - alpha||_2 / max(||alpha||_2, 1).
double relative_l2_error(const ABDecomposition& decomposition, const OneFormSamples& alpha);

struct Chart {
    double center;
    /// Coordinate function restricted to the arc: sin for centers 0 and pi,
    /// cos for pi/2 and 3pi/2.
    PeriodicScalarField coordinate;
    PeriodicScalarField partition;
    /// Nodes strictly inside the arc, where the partition may be nonzero.
    std::vector<bool> inside;
};

struct ChartAtlas {
    static constexpr double half_width = 3.0 * std::numbers::pi / 8.0;
    std::array<Chart, 4> charts;
};

OneFormSamples ab_form(const PeriodicScalarField& a, const PeriodicScalarField& b);

/// f dg for strictly positive f as a single term ((f e^-g)^1/2, (f e^g)^1/2).
ABDecomposition span_positive(const PeriodicScalarField& f, const PeriodicScalarField& g);

/// f dg for arbitrary f: shift f up by C + 1 with C = max(0, -min f) and
/// subtract the exact remainder (C + 1) dg.
ABDecomposition span_fdg(const PeriodicScalarField& f, const PeriodicScalarField& g);

ChartAtlas build_atlas(std::size_t grid_n);

/// At most two terms per chart with nonzero localized form.
ABDecomposition decompose_oneform(const OneFormSamples& alpha);

/// Periodic arc (lo, hi) with 0 < hi - lo < 2 pi; may wrap past 2 pi.
struct Window {
    double lo;
    double hi;
};

/// Like decompose_oneform, with every a and b multiplied by a smooth cutoff
/// that is 1 on the nonzero set of alpha and exactly 0 outside the window.
ABDecomposition decompose_supported(const OneFormSamples& alpha, Window window);

/// True when theta lies strictly inside the window.
bool window_contains(Window window, double theta);

} // namespace norbrack
