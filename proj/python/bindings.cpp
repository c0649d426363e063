#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "norbrack/arc_bundle.hpp"
#include "norbrack/curve_io.hpp"
#include "norbrack/hoermander.hpp"
#include "norbrack/immersion_calculus.hpp"
#include "norbrack/oneform_span.hpp"
#include "norbrack/serialization.hpp"
#include "norbrack/suites.hpp"

namespace py = pybind11;
using namespace norbrack;

namespace {

using Vector = Eigen::VectorXd;

PeriodicScalarField field(const Vector& v) { return PeriodicScalarField(v); }

ImmersionTangent tangent(const DiscreteImmersion& c, const Points& w) { return ImmersionTangent(c, w); }

DiscreteImmersion make_curve(const Eigen::MatrixXd& pts, const std::string& ambient)
{
    const Ambient amb = ambient_from_string(ambient);
    if (pts.cols() == 2 && amb == Ambient::plane)
        return DiscreteImmersion::plane(pts);
    if (pts.cols() != 3)
        throw InvalidArgument("points must have shape (N, 2) or (N, 3)");
    return DiscreteImmersion(Points(pts), amb);
}

py::dict span_dict(const SpanReport& r)
{
    py::dict d;
    d["grid_n"] = r.grid_n;
    d["modes"] = r.modes;
    d["num_generators"] = r.num_generators;
    d["singular_values"] = r.singular_values;
    d["rank"] = r.rank;
    d["full"] = r.full;
    d["rank_tol"] = r.rank_tol;
    return d;
}

py::dict record_dict(const ReportRecord& r)
{
    py::dict d;
    d["suite"] = r.suite;
    d["case"] = r.case_id;
    d["grid_n"] = r.grid_n;
    d["metric"] = r.metric;
    d["value"] = r.value;
    d["tolerance"] = r.tolerance;
    d["pass"] = r.pass;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Normal-bundle bracket verification kernel for closed curves";

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
#define NORBRACK_PY_ERROR(Name) py::register_exception<Name>(m, #Name, base.ptr())
    NORBRACK_PY_ERROR(InvalidArgument);
    NORBRACK_PY_ERROR(InvalidGrid);
    NORBRACK_PY_ERROR(GridMismatch);
    NORBRACK_PY_ERROR(ImmersionDegenerate);
    NORBRACK_PY_ERROR(GenerationFailed);
    NORBRACK_PY_ERROR(NotPositive);
    NORBRACK_PY_ERROR(SupportViolation);
    NORBRACK_PY_ERROR(StepTooLarge);
    NORBRACK_PY_ERROR(BasisTooLarge);
    NORBRACK_PY_ERROR(ConfigInvalid);
    NORBRACK_PY_ERROR(IoError);
#undef NORBRACK_PY_ERROR

    // ---- curves ----
    py::class_<DiscreteImmersion>(m, "Curve")
        .def(py::init(&make_curve), py::arg("points"), py::arg("ambient") = "plane")
        .def_property_readonly("points", &DiscreteImmersion::points)
        .def_property_readonly("ambient", [](const DiscreteImmersion& c) { return std::string(to_string(c.ambient())); })
        .def_property_readonly("grid_n", &DiscreteImmersion::grid_n)
        .def("__len__", &DiscreteImmersion::grid_n)
        .def("__repr__", [](const DiscreteImmersion& c) {
            return "Curve(grid_n=" + std::to_string(c.grid_n()) + ", ambient=" + to_string(c.ambient()) + ")";
        });

    m.def("circle", &circle, py::arg("n"), py::arg("radius") = 1.0);
    m.def("ellipse", &ellipse, py::arg("n"), py::arg("a"), py::arg("b"));
    m.def("random_fourier_curve", &random_fourier_curve, py::arg("seed"), py::arg("n"), py::arg("modes") = 6,
          py::arg("decay") = 3.0, py::arg("amplitude") = 0.3);
    m.def("great_circle", &great_circle, py::arg("n"));
    m.def("small_circle", &small_circle, py::arg("n"), py::arg("height"));
    m.def("sphere_wave", &sphere_wave, py::arg("n"), py::arg("amplitude") = 0.2, py::arg("wave") = 3);
    m.def("read_curve_csv", py::overload_cast<const std::filesystem::path&>(&read_curve_csv), py::arg("path"));
    m.def("write_curve_csv",
          py::overload_cast<const std::filesystem::path&, const DiscreteImmersion&>(&write_curve_csv), py::arg("path"),
          py::arg("curve"));

    m.def("grid_theta", [](std::size_t n) {
        validate_grid(n);
        Vector t(static_cast<Eigen::Index>(n));
        for (std::size_t k = 0; k < n; ++k)
            t[static_cast<Eigen::Index>(k)] = grid_theta(n, k);
        return t;
    }, py::arg("n"));

    // ---- grid calculus ----
    m.def("deriv_theta", [](const Vector& u) { return deriv_theta(field(u)).samples(); }, py::arg("u"));
    m.def("speed", [](const DiscreteImmersion& c) { return speed(c).samples(); }, py::arg("curve"));
    m.def("curvature", [](const DiscreteImmersion& c) { return curvature(c).samples(); }, py::arg("curve"));
    m.def("arclen_deriv", [](const DiscreteImmersion& c, const Vector& u) { return arclen_deriv(c, field(u)).samples(); },
          py::arg("curve"), py::arg("u"));
    m.def("frame", [](const DiscreteImmersion& c) {
        const Frame f = frame(c);
        return py::make_tuple(f.tangent.vectors(), f.normal.vectors());
    }, py::arg("curve"), "Return (unit tangent, unit normal) as (N, 3) arrays.");
    m.def("split_tangent_normal", [](const DiscreteImmersion& c, const Points& h) {
        const TangentNormalSplit s = split_tangent_normal(c, tangent(c, h));
        return py::make_tuple(s.tangential_coeff.samples(), s.normal_coeff.samples());
    }, py::arg("curve"), py::arg("h"));

    // ---- one-forms ----
    py::class_<ABDecomposition>(m, "ABDecomposition")
        .def_property_readonly("terms", [](const ABDecomposition& d) {
            py::list out;
            for (const ABTerm& t : d.terms)
                out.append(py::make_tuple(t.coeff, t.a.samples(), t.b.samples()));
            return out;
        })
        .def("reconstruct", [](const ABDecomposition& d, std::size_t n) { return d.reconstruct(n).samples(); },
             py::arg("n"))
        .def("to_json", &decomposition_to_json)
        .def_static("from_json", &decomposition_from_json, py::arg("text"))
        .def("__len__", [](const ABDecomposition& d) { return d.terms.size(); });

    m.def("ab_form", [](const Vector& a, const Vector& b) { return ab_form(field(a), field(b)).samples(); },
          py::arg("a"), py::arg("b"));
    m.def("span_positive", [](const Vector& f, const Vector& g) { return span_positive(field(f), field(g)); },
          py::arg("f"), py::arg("g"));
    m.def("span_fdg", [](const Vector& f, const Vector& g) { return span_fdg(field(f), field(g)); }, py::arg("f"),
          py::arg("g"));
    m.def("decompose_oneform", [](const Vector& alpha) { return decompose_oneform(OneFormSamples(alpha)); },
          py::arg("alpha"));
    m.def("decompose_supported", [](const Vector& alpha, double lo, double hi) {
        return decompose_supported(OneFormSamples(alpha), Window{lo, hi});
    }, py::arg("alpha"), py::arg("lo"), py::arg("hi"));
    m.def("relative_l2_error", [](const ABDecomposition& d, const Vector& alpha) {
        return relative_l2_error(d, OneFormSamples(alpha));
    }, py::arg("decomposition"), py::arg("alpha"));

    // ---- vector fields and brackets ----
    py::class_<CurveField>(m, "Field")
        .def_static("normal", &CurveField::normal)
        .def_static("scaled_normal", [](const Vector& a) { return CurveField::scaled_normal(field(a)); }, py::arg("a"))
        .def_static("scaled_tangent", [](const Vector& mm) { return CurveField::scaled_tangent(field(mm)); },
                    py::arg("m"))
        .def_static("constant", [](const Vec3& w) { return CurveField::constant(w); }, py::arg("w"))
        .def_property_readonly("name", &CurveField::name)
        .def("__call__", [](const CurveField& f, const DiscreteImmersion& c) { return f(c).vectors(); })
        .def("__add__", [](const CurveField& a, const CurveField& b) { return a + b; })
        .def("__rmul__", [](const CurveField& f, double s) { return s * f; })
        .def("__mul__", [](const CurveField& f, double s) { return s * f; })
        .def("__repr__", [](const CurveField& f) { return "Field(" + f.name() + ")"; });

    m.def("bracket_closed_form", [](const DiscreteImmersion& c, const Vector& a, const Vector& b) {
        return bracket_closed_form(c, field(a), field(b)).vectors();
    }, py::arg("curve"), py::arg("a"), py::arg("b"));
    m.def("bracket_numeric", [](const DiscreteImmersion& c, const Vector& a, const Vector& b, double eps) {
        return bracket_numeric(c, field(a), field(b), eps).vectors();
    }, py::arg("curve"), py::arg("a"), py::arg("b"), py::arg("eps") = 1e-5);
    m.def("field_bracket_numeric", [](const DiscreteImmersion& c, const CurveField& f, const CurveField& g, double eps) {
        return field_bracket_numeric(c, f, g, eps).vectors();
    }, py::arg("curve"), py::arg("f"), py::arg("g"), py::arg("eps") = 1e-5);
    m.def("torsion_defect", &torsion_defect, py::arg("curve"), py::arg("x"), py::arg("y"), py::arg("eps") = 1e-4);
    m.def("variation_of_normal", [](const DiscreteImmersion& c, const Points& h) {
        return variation_of_normal(c, tangent(c, h)).vectors();
    }, py::arg("curve"), py::arg("h"));
    m.def("integrate_flow", [](const DiscreteImmersion& c, const CurveField& f, double t, int steps) {
        return integrate_flow(c, f, t, steps);
    }, py::arg("curve"), py::arg("field"), py::arg("t"), py::arg("steps") = 100);

    // ---- spanning ----
    m.def("trig_basis", [](std::size_t n, int modes) {
        std::vector<Vector> out;
        for (const PeriodicScalarField& f : trig_basis(n, modes))
            out.push_back(f.samples());
        return out;
    }, py::arg("n"), py::arg("modes"));
    m.def("verify_spanning", [](const DiscreteImmersion& c, int modes, double tol) {
        return span_dict(verify_spanning(c, modes, tol));
    }, py::arg("curve"), py::arg("modes"), py::arg("rank_tol") = 1e-8);
    m.def("synthesize_tangential", [](const DiscreteImmersion& c, const Vector& mm) {
        return synthesize_tangential(c, field(mm));
    }, py::arg("curve"), py::arg("m"));
    m.def("bracket_sum", [](const DiscreteImmersion& c, const ABDecomposition& d) { return bracket_sum(c, d).vectors(); },
          py::arg("curve"), py::arg("decomposition"));

    // ---- arc-length bundle ----
    m.def("arc_defect", [](const DiscreteImmersion& c, const Points& h) {
        const ArcDefect d = arc_defect(c, tangent(c, h));
        return py::make_tuple(d.u.samples(), d.defect.samples(), d.defect_norm);
    }, py::arg("curve"), py::arg("h"), "Return (u, D_s u, max |D_s u|).");
    m.def("project_to_arc", [](const DiscreteImmersion& c, const Points& h) {
        return project_to_arc(c, tangent(c, h)).vectors();
    }, py::arg("curve"), py::arg("h"));
    m.def("flow_arc", [](const DiscreteImmersion& c, const CurveField& f, double t, int steps) {
        return flow_arc(c, f, t, steps);
    }, py::arg("curve"), py::arg("field"), py::arg("t"), py::arg("steps") = 100);
    m.def("leaf_invariant", &leaf_invariant, py::arg("c0"), py::arg("c1"));
    m.def("frobenius_defect", &frobenius_defect, py::arg("curve"), py::arg("f1"), py::arg("f2"), py::arg("eps") = 1e-4);

    // ---- suites ----
    m.def("suite_names", [] {
        std::vector<std::string> out;
        for (Suite s : all_suites())
            out.emplace_back(to_string(s));
        return out;
    });
    m.def("run_suite", [](const std::string& suite, const std::string& config_json) {
        std::vector<py::dict> out;
        for (const ReportRecord& r : run_suite(parse_config(config_json, suite_from_string(suite))))
            out.push_back(record_dict(r));
        return out;
    }, py::arg("suite"), py::arg("config_json") = "{}");
}
