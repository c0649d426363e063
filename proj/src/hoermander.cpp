#include "norbrack/hoermander.hpp"

#include <cmath>
#include <string>

#include "norbrack/immersion_calculus.hpp"

namespace norbrack {

std::vector<PeriodicScalarField> trig_basis(std::size_t grid_n, int modes)
{
    validate_grid(grid_n);
    if (modes < 0 || 2 * static_cast<std::size_t>(modes) + 1 > grid_n)
        throw BasisTooLarge("2K+1 = " + std::to_string(2 * modes + 1) + " exceeds N = " + std::to_string(grid_n));
    std::vector<PeriodicScalarField> basis;
    basis.push_back(PeriodicScalarField::constant(grid_n, 1.0));
    for (int j = 1; j <= modes; ++j) {
        basis.push_back(PeriodicScalarField::from_function(grid_n, [j](double t) { return std::cos(j * t); }));
        basis.push_back(PeriodicScalarField::from_function(grid_n, [j](double t) { return std::sin(j * t); }));
    }
    if (2 * static_cast<std::size_t>(modes) + 2 == grid_n) {
        Eigen::VectorXd nyquist(static_cast<Eigen::Index>(grid_n));
        for (Eigen::Index k = 0; k < nyquist.size(); ++k)
            nyquist[k] = (k % 2 == 0) ? 1.0 : -1.0;
        basis.emplace_back(std::move(nyquist));
    }
    return basis;
}

std::vector<ImmersionTangent> normal_generators(const DiscreteImmersion& c, int modes)
{
    const ImmersionTangent normal = frame(c).normal;
    std::vector<ImmersionTangent> out;
    for (const PeriodicScalarField& t : trig_basis(c.grid_n(), modes))
        out.push_back(t * normal);
    return out;
}

std::vector<ImmersionTangent> bracket_generators(const DiscreteImmersion& c, int modes)
{
    const std::vector<PeriodicScalarField> basis = trig_basis(c.grid_n(), modes);
    const ImmersionTangent tangent = frame(c).tangent;
    std::vector<PeriodicScalarField> slopes;
    slopes.reserve(basis.size());
    for (const PeriodicScalarField& t : basis)
        slopes.push_back(arclen_deriv(c, t));

    std::vector<ImmersionTangent> out;
    out.reserve(basis.size() * (basis.size() - 1) / 2);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            out.push_back((basis[i] * slopes[j] - basis[j] * slopes[i]) * tangent);
    return out;
}

SpanReport rank_report(const std::vector<ImmersionTangent>& generators, double rank_tol)
{
    if (generators.empty())
        throw InvalidArgument("rank_report needs at least one generator");
    if (!(rank_tol > 0.0))
        throw InvalidArgument("rank tolerance must be positive");
    const std::size_t n = generators.front().grid_n();
    const auto rows = static_cast<Eigen::Index>(2 * n);
    Eigen::MatrixXd columns(rows, static_cast<Eigen::Index>(generators.size()));
    for (std::size_t j = 0; j < generators.size(); ++j) {
        require_same_grid(n, generators[j].grid_n(), "rank_report");
        const Points& v = generators[j].vectors();
        Eigen::VectorXd col(rows);
        for (std::size_t k = 0; k < n; ++k) {
            col[static_cast<Eigen::Index>(2 * k)] = v(static_cast<Eigen::Index>(k), 0);
            col[static_cast<Eigen::Index>(2 * k + 1)] = v(static_cast<Eigen::Index>(k), 1);
        }
        const double norm = col.norm();
        if (norm > 0.0)
            col /= norm;
        columns.col(static_cast<Eigen::Index>(j)) = col;
    }

    const Eigen::BDCSVD<Eigen::MatrixXd> svd(columns);
    const Eigen::VectorXd& sigma = svd.singularValues();

    SpanReport report;
    report.grid_n = n;
    report.num_generators = generators.size();
    report.rank_tol = rank_tol;
    report.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
    const double cutoff = rank_tol * report.sigma_max();
    for (double s : report.singular_values)
        if (s >= cutoff && s > 0.0)
            ++report.rank;
    report.full = report.rank == 2 * n;
    return report;
}

SpanReport verify_spanning(const DiscreteImmersion& c, int modes, double rank_tol)
{
    if (c.ambient() != Ambient::plane)
        throw InvalidArgument("verify_spanning supports plane curves only");
    std::vector<ImmersionTangent> generators = normal_generators(c, modes);
    for (ImmersionTangent& g : bracket_generators(c, modes))
        generators.push_back(std::move(g));
    SpanReport report = rank_report(generators, rank_tol);
    report.modes = modes;
    return report;
}

ABDecomposition synthesize_tangential(const DiscreteImmersion& c, const PeriodicScalarField& m)
{
    require_same_grid(c.grid_n(), m.grid_n(), "synthesize_tangential");
    const PeriodicScalarField s = speed(c);
    return decompose_oneform(OneFormSamples((m * s * s).samples()));
}

ImmersionTangent bracket_sum(const DiscreteImmersion& c, const ABDecomposition& decomposition)
{
    ImmersionTangent sum = ImmersionTangent::zero(c);
    for (const ABTerm& term : decomposition.terms)
        sum = sum + term.coeff * bracket_closed_form(c, term.a, term.b);
    return sum;
}

} // namespace norbrack
