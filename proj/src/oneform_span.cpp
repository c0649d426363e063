#include "norbrack/oneform_span.hpp"

#include "spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace norbrack {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSupportTol = 1e-12;
constexpr int kRefinementPasses = 32;
constexpr double kGainFloor = 0.005;
constexpr double kRefinementTol = 1e-14;

Eigen::Index idx(std::size_t k) { return static_cast<Eigen::Index>(k); }

/// exp(-1 / (1 - t^2)) on (-1, 1), zero elsewhere.
double bump(double t)
{
    if (!(std::abs(t) < 1.0))
        return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

/// Smooth monotone step, 0 for t <= 0 and 1 for t >= 1.
double smooth_step(double t)
{
    auto e = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
    const double up = e(t);
    const double down = e(1.0 - t);
    return up / (up + down);
}

double signed_distance(double theta, double center) { return std::remainder(theta - center, kTwoPi); }

/// Offset of theta past the window start, in [0, 2 pi).
double window_offset(Window window, double theta)
{
    double x = std::fmod(theta - window.lo, kTwoPi);
    if (x < 0.0)
        x += kTwoPi;
    return x;
}

PeriodicScalarField times(const PeriodicScalarField& cutoff, const PeriodicScalarField& u)
{
    return PeriodicScalarField(cutoff.samples().cwiseProduct(u.samples()));
}

} // namespace

OneFormSamples::OneFormSamples(Eigen::VectorXd samples)
    : samples_(std::move(samples))
{
    validate_grid(grid_n());
    if (!samples_.allFinite())
        throw InvalidArgument("one-form contains non-finite samples");
}

OneFormSamples ABDecomposition::reconstruct(std::size_t grid_n) const
{
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(idx(grid_n));
    for (const ABTerm& term : terms) {
        require_same_grid(grid_n, term.a.grid_n(), "decomposition term");
        sum += term.coeff * ab_form(term.a, term.b).samples();
    }
    return OneFormSamples(std::move(sum));
}

double relative_l2_error(const ABDecomposition& decomposition, const OneFormSamples& alpha)
{
    const OneFormSamples rebuilt = decomposition.reconstruct(alpha.grid_n());
    return (rebuilt.samples() - alpha.samples()).norm() / std::max(alpha.samples().norm(), 1.0);
}

OneFormSamples ab_form(const PeriodicScalarField& a, const PeriodicScalarField& b)
{
    require_same_grid(a.grid_n(), b.grid_n(), "ab_form");
    const Eigen::VectorXd& av = a.samples();
    const Eigen::VectorXd& bv = b.samples();
    return OneFormSamples(av.cwiseProduct(deriv_theta(b).samples()) - bv.cwiseProduct(deriv_theta(a).samples()));
}

ABDecomposition span_positive(const PeriodicScalarField& f, const PeriodicScalarField& g)
{
    require_same_grid(f.grid_n(), g.grid_n(), "span_positive");
    if (!(f.min() > 0.0))
        throw NotPositive("min f = " + std::to_string(f.min()));
    const Eigen::ArrayXd fa = f.samples().array();
    const Eigen::ArrayXd ga = g.samples().array();
    PeriodicScalarField a(Eigen::VectorXd((fa * (-ga).exp()).sqrt()));
    PeriodicScalarField b(Eigen::VectorXd((fa * ga.exp()).sqrt()));
    ABDecomposition out;
    out.terms.push_back(ABTerm{1.0, std::move(a), std::move(b)});
    return out;
}

ABDecomposition span_fdg(const PeriodicScalarField& f, const PeriodicScalarField& g)
{
    require_same_grid(f.grid_n(), g.grid_n(), "span_fdg");
    const double shift = std::max(0.0, -f.min()) + 1.0;
    ABDecomposition out = span_positive(PeriodicScalarField(f.samples().array() + shift), g);
    out.terms.push_back(ABTerm{-shift, PeriodicScalarField::constant(f.grid_n(), 1.0), g});
    return out;
}

ChartAtlas build_atlas(std::size_t grid_n)
{
    validate_grid(grid_n);
    constexpr std::array<double, 4> centers{0.0, 0.5 * std::numbers::pi, std::numbers::pi,
                                            1.5 * std::numbers::pi};

    std::array<Eigen::VectorXd, 4> raw;
    Eigen::VectorXd total = Eigen::VectorXd::Zero(idx(grid_n));
    for (std::size_t i = 0; i < 4; ++i) {
        raw[i].resize(idx(grid_n));
        for (std::size_t k = 0; k < grid_n; ++k) {
            const double d = signed_distance(grid_theta(grid_n, k), centers[i]);
            raw[i][idx(k)] = bump(d / ChartAtlas::half_width);
        }
        total += raw[i];
    }

    auto build = [&](std::size_t i) {
        const bool use_sin = (i % 2 == 0);
        PeriodicScalarField coord = PeriodicScalarField::from_function(
            grid_n, [use_sin](double t) { return use_sin ? std::sin(t) : std::cos(t); });
        std::vector<bool> inside(grid_n);
        for (std::size_t k = 0; k < grid_n; ++k)
            inside[k] = std::abs(signed_distance(grid_theta(grid_n, k), centers[i])) < ChartAtlas::half_width;
        return Chart{centers[i], std::move(coord), PeriodicScalarField(Eigen::VectorXd(raw[i].cwiseQuotient(total))),
                     std::move(inside)};
    };
    return ChartAtlas{{build(0), build(1), build(2), build(3)}};
}

ABDecomposition decompose_oneform(const OneFormSamples& alpha)
{
    const std::size_t n = alpha.grid_n();
    const ChartAtlas atlas = build_atlas(n);

    struct LocalForm {
        const Chart* chart;
        PeriodicScalarField dcoord;
        Eigen::VectorXd f;
        ABDecomposition terms;
    };
    std::vector<LocalForm> locals;
    for (const Chart& chart : atlas.charts) {
        bool touches = false;
        for (std::size_t k = 0; k < n && !touches; ++k)
            touches = chart.inside[k] && chart.partition[k] * alpha.samples()[idx(k)] != 0.0;
        if (touches)
            locals.push_back(LocalForm{&chart, deriv_theta(chart.coordinate), Eigen::VectorXd::Zero(idx(n)), {}});
    }

    // Each chart carries f dg with f = phi * alpha / dg. The discrete pairs
    // reproduce f dg only up to the differencing error, so the residual of
    // the summed reconstruction is fed back through the partition weights.
    Eigen::VectorXd residual = alpha.samples();
    const double scale = std::max(1.0, residual.cwiseAbs().maxCoeff());
    for (int pass = 0; pass <= kRefinementPasses; ++pass) {
        // The linearized pair map scales mode k by the stencil's product-rule
        // gain, which vanishes near kh = 0.74 pi.
        if (pass > 0)
            residual = detail::precondition_product_rule(residual, kGainFloor);
        for (LocalForm& local : locals) {
            const Chart& chart = *local.chart;
            for (std::size_t k = 0; k < n; ++k)
                if (chart.inside[k] && chart.partition[k] > 0.0)
                    local.f[idx(k)] += chart.partition[k] * residual[idx(k)] / local.dcoord[k];
            local.terms = span_fdg(PeriodicScalarField(local.f), chart.coordinate);
        }
        residual = alpha.samples();
        for (const LocalForm& local : locals)
            residual -= local.terms.reconstruct(n).samples();
        if (residual.cwiseAbs().maxCoeff() <= kRefinementTol * scale)
            break;
    }

    ABDecomposition out;
    for (LocalForm& local : locals)
        for (ABTerm& term : local.terms.terms)
            out.terms.push_back(std::move(term));
    return out;
}

bool window_contains(Window window, double theta)
{
    const double x = window_offset(window, theta);
    return x > 0.0 && x < window.hi - window.lo;
}

ABDecomposition decompose_supported(const OneFormSamples& alpha, Window window)
{
    const double length = window.hi - window.lo;
    if (!(length > 0.0 && length < kTwoPi))
        throw InvalidArgument("window length must lie in (0, 2 pi)");
    const std::size_t n = alpha.grid_n();

    double first = length;
    double last = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double theta = grid_theta(n, k);
        const double value = alpha.samples()[idx(k)];
        if (!window_contains(window, theta)) {
            if (std::abs(value) >= kSupportTol)
                throw SupportViolation("alpha = " + std::to_string(value) + " at theta = " + std::to_string(theta));
            continue;
        }
        if (std::abs(value) >= kSupportTol) {
            const double x = window_offset(window, theta);
            first = std::min(first, x);
            last = std::max(last, x);
        }
    }
    if (first > last)
        return {};

    const PeriodicScalarField cutoff = PeriodicScalarField::from_function(n, [&](double theta) {
        if (!window_contains(window, theta))
            return 0.0;
        const double x = window_offset(window, theta);
        if (x < first)
            return smooth_step(x / first);
        if (x > last)
            return smooth_step((length - x) / (length - last));
        return 1.0;
    });

    ABDecomposition out = decompose_oneform(alpha);
    for (ABTerm& term : out.terms) {
        term.a = times(cutoff, term.a);
        term.b = times(cutoff, term.b);
    }
    return out;
}

} // namespace norbrack
