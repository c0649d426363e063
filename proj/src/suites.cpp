#include "norbrack/suites.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "norbrack/arc_bundle.hpp"
#include "norbrack/curve_io.hpp"
#include "norbrack/hoermander.hpp"
#include "norbrack/immersion_calculus.hpp"

namespace norbrack {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// ---- suite table ------------------------------------------------------------

struct SuiteInfo {
    Suite suite;
    const char* name;
    std::size_t default_n;
    bool sphere_ok;
};

constexpr SuiteInfo kSuites[] = {
    {Suite::torsion, "torsion", 256, true},     {Suite::variation, "variation", 256, true},
    {Suite::bracket, "bracket", 256, true},     {Suite::spanning, "spanning", 16, false},
    {Suite::oneform, "oneform", 256, false},    {Suite::arc, "arc", 256, false},
};

const SuiteInfo& info(Suite s)
{
    for (const SuiteInfo& i : kSuites)
        if (i.suite == s)
            return i;
    throw InvalidArgument("unknown suite");
}

// ---- default tolerances -----------------------------------------------------

double default_tolerance(const std::string& metric, Ambient ambient)
{
    const bool sphere = ambient == Ambient::sphere;
    if (metric == "bracket_error" || metric == "torsion_defect")
        return sphere ? 1e-2 : 1e-3;
    if (metric == "variation_error")
        return 1e-3;
    if (metric == "rank_deficit" || metric == "normal_rank_gap" || metric == "outside_window_max")
        return 0.0;
    if (metric == "condition_number")
        return 1e8;
    if (metric == "relative_l2_error")
        return 1e-5;
    if (metric == "term_count")
        return 8.0;
    if (metric == "supported_relative_error")
        return 1e-4;
    if (metric == "synthesis_error" || metric == "frobenius_defect")
        return 1e-3;
    if (metric == "leaf_invariant")
        return 1e-5;
    if (metric == "projected_arc_defect")
        return 1e-6;
    if (metric == "inverse_unprojected_leaf_invariant")
        return 1e2;
    throw InvalidArgument("no default tolerance for metric " + metric);
}

const std::set<std::string>& known_metrics()
{
    static const std::set<std::string> metrics = {
        "bracket_error",        "torsion_defect",     "variation_error",
        "rank_deficit",         "normal_rank_gap",    "condition_number",
        "relative_l2_error",    "term_count",         "outside_window_max",
        "supported_relative_error", "synthesis_error", "frobenius_defect",
        "leaf_invariant",       "projected_arc_defect", "inverse_unprojected_leaf_invariant"};
    return metrics;
}

// ---- default curve families ---------------------------------------------------

CurveSpec family(const std::string& name)
{
    CurveSpec s;
    s.family = name;
    if (name == "sphere_wave")
        s.amplitude = 0.2;
    return s;
}

CurveSpec fourier(std::uint64_t seed)
{
    CurveSpec s = family("fourier");
    s.seed = seed;
    return s;
}

std::vector<CurveSpec> default_curves(Suite suite, Ambient ambient)
{
    const bool plane = ambient == Ambient::plane;
    switch (suite) {
    case Suite::bracket:
    case Suite::torsion:
        if (plane)
            return {family("circle"), family("ellipse"), fourier(1), fourier(2), fourier(3), fourier(4), fourier(5)};
        return {family("great_circle"), family("small_circle")};
    case Suite::variation:
        if (plane)
            return {family("circle"), family("ellipse"), fourier(1)};
        return {family("great_circle"), family("small_circle"), family("sphere_wave")};
    case Suite::spanning:
        return plane ? std::vector<CurveSpec>{family("circle"), fourier(1), fourier(3)} : std::vector<CurveSpec>{};
    case Suite::oneform:
        return plane ? std::vector<CurveSpec>{family("circle"), family("ellipse")} : std::vector<CurveSpec>{};
    case Suite::arc:
        return plane ? std::vector<CurveSpec>{family("circle"), family("ellipse"), fourier(2)}
                     : std::vector<CurveSpec>{};
    }
    return {};
}

// ---- JSON helpers -------------------------------------------------------------

template <class T>
T get_field(const ordered_json& j, const char* key, const char* context)
{
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigInvalid(std::string(context) + ": field '" + key + "' has the wrong type");
    }
}

void reject_unknown(const ordered_json& j, const std::set<std::string>& allowed, const char* context)
{
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw ConfigInvalid(std::string(context) + ": unknown field '" + key + "'");
}

CurveSpec parse_curve(const ordered_json& j)
{
    if (j.is_string())
        return family(j.get<std::string>());
    if (!j.is_object())
        throw ConfigInvalid("curve entries must be strings or objects");
    reject_unknown(j, {"family", "radius", "a", "b", "seed", "modes", "decay", "amplitude", "height", "wave", "path"},
                   "curve");
    if (!j.contains("family"))
        throw ConfigInvalid("curve: missing 'family'");
    CurveSpec s = family(get_field<std::string>(j, "family", "curve"));
    if (j.contains("radius")) s.radius = get_field<double>(j, "radius", "curve");
    if (j.contains("a")) s.a = get_field<double>(j, "a", "curve");
    if (j.contains("b")) s.b = get_field<double>(j, "b", "curve");
    if (j.contains("seed")) s.seed = get_field<std::uint64_t>(j, "seed", "curve");
    if (j.contains("modes")) s.modes = get_field<int>(j, "modes", "curve");
    if (j.contains("decay")) s.decay = get_field<double>(j, "decay", "curve");
    if (j.contains("amplitude")) s.amplitude = get_field<double>(j, "amplitude", "curve");
    if (j.contains("height")) s.height = get_field<double>(j, "height", "curve");
    if (j.contains("wave")) s.wave = get_field<int>(j, "wave", "curve");
    if (j.contains("path")) s.path = get_field<std::string>(j, "path", "curve");
    return s;
}

void validate_curve(const CurveSpec& s)
{
    static const std::set<std::string> families = {"circle",       "ellipse",      "fourier",    "file",
                                                   "great_circle", "small_circle", "sphere_wave"};
    if (!families.count(s.family))
        throw ConfigInvalid("unknown curve family '" + s.family + "'");
    auto positive = [&](double x, const char* what) {
        if (!(x > 0.0) || !std::isfinite(x))
            throw ConfigInvalid(s.family + ": " + what + " must be positive");
    };
    if (s.family == "circle")
        positive(s.radius, "radius");
    if (s.family == "ellipse") {
        positive(s.a, "a");
        positive(s.b, "b");
    }
    if (s.family == "fourier") {
        if (s.modes < 0)
            throw ConfigInvalid("fourier: modes must be nonnegative");
        if (!std::isfinite(s.decay) || !std::isfinite(s.amplitude) || s.amplitude < 0.0)
            throw ConfigInvalid("fourier: decay and amplitude must be finite, amplitude nonnegative");
    }
    if (s.family == "small_circle" && !(std::abs(s.height) < 1.0))
        throw ConfigInvalid("small_circle: |height| must be below 1");
    if (s.family == "sphere_wave" && (!std::isfinite(s.amplitude) || s.wave < 0))
        throw ConfigInvalid("sphere_wave: bad amplitude or wave");
    if (s.family == "file" && s.path.empty())
        throw ConfigInvalid("file: missing path");
}

// ---- case runner ----------------------------------------------------------------

class Runner {
public:
    explicit Runner(const SuiteConfig& config) : config_(config), name_(to_string(config.suite)) {}

    double tolerance(const std::string& metric, Ambient ambient) const
    {
        const auto it = config_.tolerances.find(metric);
        return it != config_.tolerances.end() ? it->second : default_tolerance(metric, ambient);
    }

    void record(const std::string& case_id, const std::string& metric, double value, Ambient ambient)
    {
        records_.push_back(
            ReportRecord::make(name_, case_id, config_.grid_n, metric, value, tolerance(metric, ambient)));
    }

    // Runs body; any error becomes a failed "error" record for the case.
    void guarded(const std::string& case_id, const std::function<void()>& body)
    {
        try {
            body();
        } catch (const std::exception& e) {
            ReportRecord r;
            r.suite = name_;
            r.case_id = case_id + ": " + e.what();
            r.grid_n = config_.grid_n;
            r.metric = "error";
            r.value = std::numeric_limits<double>::quiet_NaN();
            r.tolerance = 0.0;
            r.pass = false;
            records_.push_back(std::move(r));
        }
    }

    std::vector<CurveSpec> curves() const
    {
        if (!config_.curves.empty())
            return config_.curves;
        std::vector<CurveSpec> out;
        for (Ambient a : {Ambient::plane, Ambient::sphere}) {
            if (config_.ambient && *config_.ambient != a)
                continue;
            for (CurveSpec& s : default_curves(config_.suite, a))
                out.push_back(std::move(s));
        }
        return out;
    }

    // Builds each configured curve and hands it to body under its case id.
    void for_each_curve(const std::function<void(const std::string&, const DiscreteImmersion&)>& body)
    {
        for (const CurveSpec& spec : curves()) {
            const std::string id = spec.id();
            guarded(id, [&] {
                const DiscreteImmersion c = spec.build(config_.grid_n);
                if (!info(config_.suite).sphere_ok && c.ambient() != Ambient::plane)
                    throw InvalidArgument(std::string(name_) + " suite supports plane curves only");
                body(id, c);
            });
        }
    }

    double eps(double fallback) const { return config_.eps.value_or(fallback); }
    int modes(int fallback) const { return config_.modes.value_or(fallback); }
    const SuiteConfig& config() const { return config_; }
    std::vector<ReportRecord> take() { return std::move(records_); }

private:
    const SuiteConfig& config_;
    std::string name_;
    std::vector<ReportRecord> records_;
};

void run_bracket(Runner& r)
{
    const double eps = r.eps(1e-5);
    r.for_each_curve([&](const std::string& id, const DiscreteImmersion& c) {
        const auto basis = trig_basis(c.grid_n(), r.modes(4));
        double worst = 0.0;
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j)
                worst = std::max(worst, max_distance(bracket_numeric(c, basis[i], basis[j], eps),
                                                     bracket_closed_form(c, basis[i], basis[j])));
        r.record(id, "bracket_error", worst, c.ambient());
    });
}

void run_torsion(Runner& r)
{
    const double eps = r.eps(1e-4);
    r.for_each_curve([&](const std::string& id, const DiscreteImmersion& c) {
        const auto basis = trig_basis(c.grid_n(), r.modes(4));
        double worst = 0.0;
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j)
                worst = std::max(worst, torsion_defect(c, CurveField::scaled_normal(basis[i]),
                                                       CurveField::scaled_normal(basis[j]), eps));
        r.record(id, "torsion_defect", worst, c.ambient());
    });
}

void run_variation(Runner& r)
{
    const double eps = r.eps(1e-4);
    r.for_each_curve([&](const std::string& id, const DiscreteImmersion& c) {
        const Frame f = frame(c);
        const auto cos1 = PeriodicScalarField::from_function(c.grid_n(), [](double t) { return std::cos(t); });
        const std::pair<const char*, ImmersionTangent> directions[] = {
            {"n", f.normal},
            {"cos*n", cos1 * f.normal},
            {"v", f.tangent},
            {"random", random_tangent(c, r.config().seed + 11, 4)},
        };
        for (const auto& [label, h] : directions) {
            const std::string case_id = id + "/h=" + label;
            r.guarded(case_id, [&] {
                const double err = max_distance(variation_of_normal(c, h),
                                                directional_derivative(CurveField::normal(), c, h, eps));
                r.record(case_id, "variation_error", err, c.ambient());
            });
        }
    });
}

void run_spanning(Runner& r)
{
    r.for_each_curve([&](const std::string& id, const DiscreteImmersion& c) {
        const std::size_t n = c.grid_n();
        const int modes = r.modes(static_cast<int>(n / 2) - 1);
        const SpanReport report = verify_spanning(c, modes);
        r.record(id, "rank_deficit", static_cast<double>(2 * n - report.rank), Ambient::plane);
        const double condition = report.sigma_min() > 0.0 ? report.sigma_max() / report.sigma_min()
                                                           : std::numeric_limits<double>::infinity();
        r.record(id, "condition_number", condition, Ambient::plane);

        const auto normals = normal_generators(c, modes);
        const SpanReport normal_report = rank_report(normals, report.rank_tol);
        const double expected = static_cast<double>(std::min(n, normals.size()));
        r.record(id, "normal_rank_gap", std::abs(static_cast<double>(normal_report.rank) - expected), Ambient::plane);
    });
}

std::string file_stem(std::string s)
{
    for (char& ch : s)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '.' && ch != '-')
            ch = '_';
    return s;
}

double bump(double t, double lo, double hi)
{
    const double x = (2.0 * t - lo - hi) / (hi - lo);
    return std::abs(x) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - x * x)) : 0.0;
}

void run_oneform(Runner& r)
{
    const SuiteConfig& cfg = r.config();
    const std::size_t n = cfg.grid_n;
    const int band = r.modes(10);
    for (int i = 0; i < cfg.oneform_count; ++i) {
        const std::string id = "random(seed=" + std::to_string(cfg.seed + static_cast<std::uint64_t>(i)) +
                               ",modes=" + std::to_string(band) + ")";
        r.guarded(id, [&] {
            const OneFormSamples alpha(
                random_trig_field(n, cfg.seed + static_cast<std::uint64_t>(i), band).samples());
            const ABDecomposition d = decompose_oneform(alpha);
            r.record(id, "relative_l2_error", relative_l2_error(d, alpha), Ambient::plane);
            r.record(id, "term_count", static_cast<double>(d.terms.size()), Ambient::plane);
        });
    }

    // Localized forms: exact zeros outside the window, and accuracy when the
    // support sits well inside it.
    struct Localized {
        const char* label;
        Window window;
        double lo, hi;
        bool accuracy;
    };
    const double h = 2.0 * kPi / static_cast<double>(n);
    const Localized cases[] = {
        {"bump_cos(pi/4,3pi/4)", {kPi / 4, 3 * kPi / 4}, kPi / 4, 3 * kPi / 4, false},
        {"bump_cos3(wrap)", {5.0, 8.0}, 5.5, 7.5, false},
        {"bump_cos3(full-minus-node)", {0.5 * h, 2.0 * kPi - 0.5 * h}, 1.0, 5.0, true},
    };
    for (const Localized& lc : cases) {
        const std::string id = std::string("supported/") + lc.label;
        r.guarded(id, [&] {
            const auto a = PeriodicScalarField::from_function(n, [&](double t) {
                double w = 0.0;
                for (double shift : {-2.0 * kPi, 0.0, 2.0 * kPi})
                    w += bump(t + shift, lc.lo, lc.hi);
                return std::cos(3.0 * t) * w;
            });
            const OneFormSamples alpha(a.samples());
            const ABDecomposition d = decompose_supported(alpha, lc.window);
            double outside = 0.0;
            for (const ABTerm& term : d.terms)
                for (std::size_t k = 0; k < n; ++k)
                    if (!window_contains(lc.window, grid_theta(n, k)))
                        outside = std::max({outside, std::abs(term.a[k]), std::abs(term.b[k])});
            r.record(id, "outside_window_max", outside, Ambient::plane);
            if (lc.accuracy)
                r.record(id, "supported_relative_error", relative_l2_error(d, alpha), Ambient::plane);
        });
    }

    // Tangential fields m d(theta)c as sums of normal brackets.
    r.for_each_curve([&](const std::string& curve_id, const DiscreteImmersion& c) {
        const std::pair<const char*, std::function<double(double)>> weights[] = {
            {"1", [](double) { return 1.0; }},
            {"cos", [](double t) { return std::cos(t); }},
            {"cos3", [](double t) { return std::cos(3.0 * t); }},
        };
        for (const auto& [label, fn] : weights) {
            const std::string id = curve_id + "/m=" + label;
            r.guarded(id, [&] {
                const auto m = PeriodicScalarField::from_function(c.grid_n(), fn);
                const ImmersionTangent target = m * velocity(c);
                const ImmersionTangent sum = bracket_sum(c, synthesize_tangential(c, m));
                const double err = max_distance(sum, target) / std::max(target.max_norm(), 1.0);
                r.record(id, "synthesis_error", err, Ambient::plane);
            });
        }
    });
}

void run_arc(Runner& r)
{
    const SuiteConfig& cfg = r.config();
    const double eps = r.eps(1e-4);
    const std::size_t n = cfg.grid_n;
    const auto trig = [n](double j, bool sine) {
        return PeriodicScalarField::from_function(n, [=](double t) { return sine ? std::sin(j * t) : std::cos(j * t); });
    };
    const std::vector<std::pair<std::string, CurveField>> fields = {
        {"n", CurveField::normal()},
        {"0.5cos3*n", CurveField::scaled_normal(0.5 * trig(3, false))},
        {"cos*n+e1", CurveField::scaled_normal(trig(1, false)) + CurveField::constant(Vec3(1.0, 0.0, 0.0))},
    };
    struct Pair {
        const char* label;
        CurveField f1, f2;
    };
    const std::vector<Pair> pairs = {
        {"n,cos*n", CurveField::normal(), CurveField::scaled_normal(trig(1, false))},
        {"n,v", CurveField::normal(), CurveField::scaled_tangent(PeriodicScalarField::constant(n, 1.0))},
        {"sin2*n,cos3*n", CurveField::scaled_normal(trig(2, true)), CurveField::scaled_normal(trig(3, false))},
    };

    r.for_each_curve([&](const std::string& id, const DiscreteImmersion& c) {
        r.guarded(id + "/projection", [&] {
            const ImmersionTangent p = project_to_arc(c, random_tangent(c, cfg.seed + 3, 6));
            r.record(id + "/projection", "projected_arc_defect", arc_defect(c, p).defect_norm, Ambient::plane);
        });
        for (const auto& [label, f] : fields) {
            const std::string case_id = id + "/flow=" + label;
            r.guarded(case_id, [&] {
                std::vector<DiscreteImmersion> frames;
                const bool keep = !cfg.frames_dir.empty();
                const DiscreteImmersion c1 = flow_arc(c, f, cfg.flow_time, cfg.flow_steps, keep ? &frames : nullptr,
                                                      std::max(1, cfg.flow_steps / 20));
                if (keep)
                    write_flow_frames(std::filesystem::path(cfg.frames_dir) / file_stem(id + "_" + label), frames);
                r.record(case_id, "leaf_invariant", leaf_invariant(c, c1), Ambient::plane);
            });
        }
        for (const Pair& p : pairs) {
            const std::string case_id = id + "/bracket=" + p.label;
            r.guarded(case_id, [&] {
                r.record(case_id, "frobenius_defect", frobenius_defect(c, p.f1, p.f2, eps), Ambient::plane);
            });
        }
        // Without the projection the speed ratio must drift.
        const std::string control = id + "/unprojected=" + fields[1].first;
        r.guarded(control, [&] {
            const DiscreteImmersion c1 = integrate_flow(c, fields[1].second, cfg.flow_time, cfg.flow_steps);
            r.record(control, "inverse_unprojected_leaf_invariant", 1.0 / leaf_invariant(c, c1), Ambient::plane);
        });
    });
}

} // namespace

// ---- public API ---------------------------------------------------------------

const char* to_string(Suite suite) { return info(suite).name; }

Suite suite_from_string(const std::string& name)
{
    for (const SuiteInfo& i : kSuites)
        if (name == i.name)
            return i.suite;
    throw ConfigInvalid("unknown suite '" + name + "'");
}

const std::vector<Suite>& all_suites()
{
    static const std::vector<Suite> suites = [] {
        std::vector<Suite> out;
        for (const SuiteInfo& i : kSuites)
            out.push_back(i.suite);
        return out;
    }();
    return suites;
}

Ambient CurveSpec::ambient() const
{
    if (family == "great_circle" || family == "small_circle" || family == "sphere_wave")
        return Ambient::sphere;
    return Ambient::plane;
}

std::string CurveSpec::id() const
{
    if (family == "circle")
        return radius == 1.0 ? "circle" : "circle(" + num(radius) + ")";
    if (family == "ellipse")
        return "ellipse(" + num(a) + "," + num(b) + ")";
    if (family == "fourier")
        return "fourier(seed=" + std::to_string(seed) + ",modes=" + std::to_string(modes) + ",decay=" + num(decay) +
               ")";
    if (family == "small_circle")
        return "small_circle(" + num(height) + ")";
    if (family == "sphere_wave")
        return "sphere_wave(" + num(amplitude) + "," + std::to_string(wave) + ")";
    if (family == "file")
        return "file(" + path + ")";
    return family;
}

DiscreteImmersion CurveSpec::build(std::size_t grid_n) const
{
    if (family == "circle")
        return circle(grid_n, radius);
    if (family == "ellipse")
        return ellipse(grid_n, a, b);
    if (family == "fourier")
        return random_fourier_curve(seed, grid_n, modes, decay, amplitude);
    if (family == "great_circle")
        return great_circle(grid_n);
    if (family == "small_circle")
        return small_circle(grid_n, height);
    if (family == "sphere_wave")
        return sphere_wave(grid_n, amplitude, wave);
    if (family == "file") {
        DiscreteImmersion c = read_curve_csv(std::filesystem::path(path));
        require_same_grid(grid_n, c.grid_n(), "curve file");
        return c;
    }
    throw ConfigInvalid("unknown curve family '" + family + "'");
}

void SuiteConfig::validate() const
{
    try {
        validate_grid(grid_n);
    } catch (const Error& e) {
        throw ConfigInvalid(e.what());
    }
    if (modes && *modes < 0)
        throw ConfigInvalid("modes must be nonnegative");
    if (eps && (!(*eps > 0.0) || !std::isfinite(*eps)))
        throw ConfigInvalid("eps must be positive");
    for (const auto& [metric, tol] : tolerances) {
        if (!known_metrics().count(metric))
            throw ConfigInvalid("unknown metric '" + metric + "' in tolerances");
        if (!(tol > 0.0) || !std::isfinite(tol))
            throw ConfigInvalid("tolerance for " + metric + " must be positive");
    }
    for (const CurveSpec& c : curves) {
        validate_curve(c);
        if (c.family == "file")
            continue;
        if (ambient && c.ambient() != *ambient)
            throw ConfigInvalid("curve " + c.id() + " does not live in the configured ambient");
        if (c.ambient() == Ambient::sphere && !info(suite).sphere_ok)
            throw ConfigInvalid(std::string(to_string(suite)) + " suite supports plane curves only");
    }
    if (ambient == Ambient::sphere && !info(suite).sphere_ok)
        throw ConfigInvalid(std::string(to_string(suite)) + " suite supports plane curves only");
    if (oneform_count < 0)
        throw ConfigInvalid("oneform_count must be nonnegative");
    if (flow_steps < 1)
        throw ConfigInvalid("flow_steps must be positive");
    if (!(flow_time >= 0.0) || !std::isfinite(flow_time))
        throw ConfigInvalid("flow_time must be finite and nonnegative");
}

SuiteConfig parse_config(const std::string& json_text, std::optional<Suite> fallback)
{
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigInvalid(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigInvalid("config must be a JSON object");
    reject_unknown(j,
                   {"suite", "grid_n", "modes", "eps", "tolerances", "curves", "ambient", "output", "seed",
                    "frames_dir", "oneform_count", "flow_time", "flow_steps"},
                   "config");

    SuiteConfig cfg;
    if (j.contains("suite"))
        cfg.suite = suite_from_string(get_field<std::string>(j, "suite", "config"));
    else if (fallback)
        cfg.suite = *fallback;
    else
        throw ConfigInvalid("config names no suite");
    cfg.grid_n = info(cfg.suite).default_n;

    if (j.contains("grid_n")) {
        const auto n = get_field<long long>(j, "grid_n", "config");
        if (n < 0)
            throw ConfigInvalid("grid_n must be positive");
        cfg.grid_n = static_cast<std::size_t>(n);
    }
    if (j.contains("modes")) cfg.modes = get_field<int>(j, "modes", "config");
    if (j.contains("eps")) cfg.eps = get_field<double>(j, "eps", "config");
    if (j.contains("tolerances")) {
        if (!j["tolerances"].is_object())
            throw ConfigInvalid("tolerances must be an object");
        for (const auto& [metric, value] : j["tolerances"].items()) {
            if (!value.is_number())
                throw ConfigInvalid("tolerance for " + metric + " must be a number");
            cfg.tolerances[metric] = value.get<double>();
        }
    }
    if (j.contains("curves")) {
        if (!j["curves"].is_array())
            throw ConfigInvalid("curves must be an array");
        for (const auto& c : j["curves"])
            cfg.curves.push_back(parse_curve(c));
    }
    if (j.contains("ambient")) {
        try {
            cfg.ambient = ambient_from_string(get_field<std::string>(j, "ambient", "config"));
        } catch (const InvalidArgument& e) {
            throw ConfigInvalid(e.what());
        }
    }
    if (j.contains("output")) cfg.output = get_field<std::string>(j, "output", "config");
    if (j.contains("seed")) cfg.seed = get_field<std::uint64_t>(j, "seed", "config");
    if (j.contains("frames_dir")) cfg.frames_dir = get_field<std::string>(j, "frames_dir", "config");
    if (j.contains("oneform_count")) cfg.oneform_count = get_field<int>(j, "oneform_count", "config");
    if (j.contains("flow_time")) cfg.flow_time = get_field<double>(j, "flow_time", "config");
    if (j.contains("flow_steps")) cfg.flow_steps = get_field<int>(j, "flow_steps", "config");
    cfg.validate();
    return cfg;
}

SuiteConfig load_config(const std::filesystem::path& path, std::optional<Suite> fallback)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigInvalid("cannot open config " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), fallback);
}

ReportRecord ReportRecord::make(std::string suite, std::string case_id, std::size_t grid_n, std::string metric,
                                double value, double tolerance)
{
    ReportRecord r;
    r.suite = std::move(suite);
    r.case_id = std::move(case_id);
    r.grid_n = grid_n;
    r.metric = std::move(metric);
    r.value = value;
    r.tolerance = tolerance;
    r.pass = value <= tolerance;
    return r;
}

std::string ReportRecord::to_json() const
{
    ordered_json j;
    j["suite"] = suite;
    j["case"] = case_id;
    j["grid_n"] = grid_n;
    j["metric"] = metric;
    j["value"] = value;
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    return j.dump();
}

std::vector<ReportRecord> run_suite(const SuiteConfig& config)
{
    config.validate();
    Runner runner(config);
    switch (config.suite) {
    case Suite::torsion: run_torsion(runner); break;
    case Suite::variation: run_variation(runner); break;
    case Suite::bracket: run_bracket(runner); break;
    case Suite::spanning: run_spanning(runner); break;
    case Suite::oneform: run_oneform(runner); break;
    case Suite::arc: run_arc(runner); break;
    }
    return runner.take();
}

bool all_pass(const std::vector<ReportRecord>& records)
{
    return std::all_of(records.begin(), records.end(), [](const ReportRecord& r) { return r.pass; });
}

void emit_report(const std::vector<ReportRecord>& records, const std::filesystem::path& path)
{
    std::ostringstream body;
    for (const ReportRecord& r : records)
        body << r.to_json() << '\n';
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write report " + path.string());
    out << body.str();
    if (!out)
        throw IoError("failed writing report " + path.string());
}

PeriodicScalarField random_trig_field(std::size_t grid_n, std::uint64_t seed, int modes)
{
    if (modes < 0)
        throw InvalidArgument("modes must be nonnegative");
    UniformSource rng(seed);
    std::vector<double> a(static_cast<std::size_t>(modes) + 1), b(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        a[j] = rng.next();
        b[j] = rng.next();
    }
    return PeriodicScalarField::from_function(grid_n, [&](double t) {
        double v = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j)
            v += a[j] * std::cos(static_cast<double>(j) * t) + b[j] * std::sin(static_cast<double>(j) * t);
        return v;
    });
}

} // namespace norbrack
