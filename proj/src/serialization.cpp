#include "norbrack/serialization.hpp"

#include <json.hpp>

namespace norbrack {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json samples_json(const PeriodicScalarField& u)
{
    const Eigen::VectorXd& s = u.samples();
    return ordered_json(std::vector<double>(s.data(), s.data() + s.size()));
}

PeriodicScalarField samples_from_json(const ordered_json& j)
{
    const auto values = j.get<std::vector<double>>();
    return PeriodicScalarField(Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
}

} // namespace

std::string decomposition_to_json(const ABDecomposition& decomposition)
{
    ordered_json out = ordered_json::array();
    for (const ABTerm& term : decomposition.terms) {
        ordered_json t;
        t["coeff"] = term.coeff;
        t["a"] = samples_json(term.a);
        t["b"] = samples_json(term.b);
        out.push_back(std::move(t));
    }
    return out.dump();
}

ABDecomposition decomposition_from_json(const std::string& text)
{
    ABDecomposition out;
    try {
        const ordered_json j = ordered_json::parse(text);
        if (!j.is_array())
            throw IoError("decomposition JSON must be an array");
        for (const auto& t : j)
            out.terms.push_back(ABTerm{t.at("coeff").get<double>(), samples_from_json(t.at("a")),
                                       samples_from_json(t.at("b"))});
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad decomposition JSON: ") + e.what());
    }
    return out;
}

std::string span_report_to_json(const SpanReport& report)
{
    ordered_json j;
    j["n"] = report.grid_n;
    j["K"] = report.modes;
    j["m"] = report.num_generators;
    j["rank"] = report.rank;
    j["full"] = report.full;
    j["sigma_min"] = report.sigma_min();
    j["sigma_max"] = report.sigma_max();
    j["rank_tol"] = report.rank_tol;
    return j.dump();
}

} // namespace norbrack
