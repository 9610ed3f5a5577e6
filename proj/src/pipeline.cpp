#include "revham/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

namespace revham {

ExitCode exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const ParseError*>(&e) != nullptr || dynamic_cast<const Json::parse_error*>(&e) != nullptr) {
        return ExitCode::parse;
    }
    if (dynamic_cast<const NotReversible*>(&e) != nullptr) {
        return ExitCode::not_reversible;
    }
    if (dynamic_cast<const DegenerateJacobian*>(&e) != nullptr) {
        return ExitCode::degenerate;
    }
    return ExitCode::failure;
}

void JobConfig::validate() const
{
    if (order < 2) {
        throw Error("order must be at least 2");
    }
    if (!(verify.amplitude > 0.0)) {
        throw Error("amplitude must be positive");
    }
    if (!(verify.dt > 0.0)) {
        throw Error("dt must be positive");
    }
    if (!(verify.horizon >= 0.0)) {
        throw Error("horizon must be nonnegative");
    }
    if (plot.grid < 2) {
        throw Error("plot grid needs at least two points per side");
    }
}

namespace {

template <class T>
void read_if(const Json& doc, const char* key, T& target)
{
    if (doc.contains(key)) {
        target = doc.at(key).get<T>();
    }
}

std::string monomial_name(int i, int j, const VarNames& vars)
{
    Series2<Rational> s = Series2<Rational>::monomial(i + j, i, j, Rational(1));
    return unparse(s, vars);
}

Json matrix_json(const LinearMap2<Surd>& m)
{
    return Json::array({Json::array({format_coeff(m(0, 0)), format_coeff(m(0, 1))}),
                        Json::array({format_coeff(m(1, 0)), format_coeff(m(1, 1))})});
}

Json double_or_null(double x)
{
    if (std::isfinite(x)) {
        return x;
    }
    return nullptr;
}

Json point_json(const Point& p) { return Json::array({p[0], p[1]}); }

struct Pipeline {
    LoadedField loaded;
    NormalFormResult result;
    HamiltonianNF ham;
};

Pipeline run_pipeline(const JobConfig& config)
{
    config.validate();
    LoadedField lf = load_field(config);
    NormalFormResult r = compute_normal_form(lf.field);
    HamiltonianNF h = build_hamiltonian(r);
    return {std::move(lf), std::move(r), std::move(h)};
}

bool symbolic_residual_zero(const Pipeline& pl, const SeriesPair<Surd>& h_bar)
{
    const auto& x = pl.loaded.field;
    auto res = conjugacy_residual(convert<Surd>(x), h_bar, pl.ham.X_H, x.order());
    auto eq = equivariance_residual(h_bar, convert<Surd>(standard_involution()));
    return residual_valuation(res) > x.order() && residual_valuation(eq) > x.order();
}

SeriesPair<Surd> perturbed(const SeriesPair<Surd>& h, const std::optional<Perturbation>& p)
{
    if (!p) {
        return h;
    }
    SeriesPair<Surd> out = h;
    if (p->component != 1 && p->component != 2) {
        throw Error("perturbation component must be 1 or 2");
    }
    Series2<Surd>& s = p->component == 1 ? out.first : out.second;
    if (p->i < 0 || p->j < 0 || p->i + p->j > s.order()) {
        throw Error("perturbation index outside the conjugacy order");
    }
    s.at(p->i, p->j) += Surd(p->delta);
    return out;
}

void write_csv_row(std::FILE* f, std::initializer_list<double> values)
{
    bool first = true;
    for (double v : values) {
        std::fprintf(f, first ? "%.12e" : ",%.12e", v);
        first = false;
    }
    std::fputc('\n', f);
}

} // namespace

JobConfig config_from_json(const Json& doc, JobConfig base)
{
    JobConfig c = std::move(base);
    if (!doc.is_object()) {
        throw Error("config must be a JSON object");
    }
    read_if(doc, "P", c.p);
    read_if(doc, "Q", c.q);
    if (doc.contains("P_table")) {
        c.p_table = doc.at("P_table");
    }
    if (doc.contains("Q_table")) {
        c.q_table = doc.at("Q_table");
    }
    if (doc.contains("vars")) {
        const auto& v = doc.at("vars");
        if (!v.is_array() || v.size() != 2) {
            throw Error("vars must be a list of two identifiers");
        }
        c.vars = {v[0].get<std::string>(), v[1].get<std::string>()};
    }
    read_if(doc, "order", c.order);
    read_if(doc, "strict_degree", c.strict_degree);
    if (doc.contains("verify")) {
        const auto& v = doc.at("verify");
        read_if(v, "symbolic", c.verify.symbolic);
        read_if(v, "numeric", c.verify.numeric);
        read_if(v, "periods", c.verify.periods);
        read_if(v, "amplitude", c.verify.amplitude);
        read_if(v, "dt", c.verify.dt);
        read_if(v, "horizon", c.verify.horizon);
        read_if(v, "period_budget", c.verify.period_budget);
    }
    if (doc.contains("tolerances")) {
        const auto& t = doc.at("tolerances");
        read_if(t, "trajectory", c.tolerances.trajectory);
        read_if(t, "drift", c.tolerances.drift);
        read_if(t, "period", c.tolerances.period);
    }
    if (doc.contains("plot")) {
        const auto& p = doc.at("plot");
        read_if(p, "level_set", c.plot.level_set);
        read_if(p, "trajectory", c.plot.trajectory);
        read_if(p, "grid", c.plot.grid);
        read_if(p, "extent", c.plot.extent);
        read_if(p, "directory", c.plot.directory);
    }
    return c;
}

Series2<Rational> series_from_table(const Json& rows, int order)
{
    if (!rows.is_array()) {
        throw ParseError("coefficient table must be an array", 0);
    }
    Series2<Rational> s(order);
    std::size_t row = 0;
    for (const auto& r : rows) {
        if (!r.is_array() || r.size() != 3 || !r[0].is_number_integer() || !r[1].is_number_integer()) {
            throw ParseError("coefficient rows must be [i, j, \"p/q\"]", row);
        }
        int i = r[0].get<int>();
        int j = r[1].get<int>();
        if (i < 0 || j < 0) {
            throw ParseError("negative exponent in coefficient table", row);
        }
        Rational c;
        if (r[2].is_string()) {
            try {
                c = parse_rational(r[2].get<std::string>());
            } catch (const ParseError&) {
                throw;
            } catch (const Error& e) {
                throw ParseError(e.what(), row);
            }
        } else if (r[2].is_number_integer()) {
            c = Rational(r[2].get<long>());
        } else {
            throw ParseError("coefficients must be exact strings or integers", row);
        }
        if (i + j <= order) {
            s.at(i, j) += c;
        }
        ++row;
    }
    return s;
}

LoadedField load_field(const JobConfig& config)
{
    ParseOptions opts;
    opts.strict_degree = config.strict_degree;
    auto component = [&](const std::optional<Json>& table, const std::string& text, const char* name) {
        if (table) {
            return ParsedSeries{series_from_table(*table, config.order), false};
        }
        if (text.empty()) {
            throw ParseError(std::string("missing expression for ") + name, 0);
        }
        return parse_expression(text, config.vars, config.order, opts);
    };
    ParsedSeries p = component(config.p_table, config.p, "P");
    ParsedSeries q = component(config.q_table, config.q, "Q");
    return {PlanarField<Rational>(std::move(p.series), std::move(q.series)), p.dropped_degree || q.dropped_degree};
}

std::string format_coeff(const Rational& c) { return to_string(c); }
std::string format_coeff(const Complex& c) { return to_string(c); }
std::string format_coeff(const Surd& c) { return to_string(c); }

Json to_json(const EquilibriumKind& kind)
{
    return {{"type", kind.name()}, {"modulus_squared", format_coeff(kind.modulus_squared)}, {"modulus", kind.modulus}};
}

Json to_json(const NormalFormResult& result, const HamiltonianNF& ham)
{
    Json log = Json::array();
    for (const auto& rec : result.resonance_log) {
        Json e{{"degree", rec.degree}, {"eliminated", rec.eliminated}};
        if (rec.resonant_index) {
            e["resonant_index"] = *rec.resonant_index;
            e["resonant_value"] = rec.resonant_value;
        } else {
            e["resonant_index"] = nullptr;
        }
        log.push_back(std::move(e));
    }
    return {
        {"order", result.order},
        {"kind", to_json(result.kind)},
        {"mu", format_coeff(result.mu)},
        {"mu_float", result.mu.to_double()},
        {"pre_linear", matrix_json(result.change.pre_linear)},
        {"g", coeff_table(result.g)},
        {"h1", coeff_table(result.h1)},
        {"h_bar", {{"first", coeff_table(result.h_bar.first)}, {"second", coeff_table(result.h_bar.second)}}},
        {"G", coeff_table(ham.G)},
        {"F", coeff_table(ham.F)},
        {"H", coeff_table(ham.H)},
        {"X_H", {{"p", coeff_table(ham.X_H.p())}, {"q", coeff_table(ham.X_H.q())}}},
        {"resonance_log", std::move(log)},
    };
}

Json to_json(const VerificationReport& report, const Tolerances& tol)
{
    Json traj = Json::array();
    for (const auto& t : report.trajectory_errors) {
        traj.push_back({{"q0", point_json(t.q0)}, {"horizon", t.horizon}, {"max_error", double_or_null(t.max_error)}});
    }
    Json periods = Json::array();
    for (const auto& p : report.period_tests) {
        periods.push_back({{"q0", point_json(p.q0)},
                           {"period_x", p.result.period_x},
                           {"period_xh", p.result.period_xh},
                           {"relative_error", double_or_null(p.result.relative_error)}});
    }
    Json drift = Json::array();
    for (const auto& d : report.integral_drift) {
        drift.push_back({{"q0", point_json(d.q0)}, {"max_drift", double_or_null(d.max_drift)}});
    }
    return {
        {"order", report.order},
        {"symbolic_residual_max_degree_ok", report.symbolic_residual_max_degree_ok},
        {"equivariance_ok", report.equivariance_ok},
        {"trajectory_errors", std::move(traj)},
        {"period_tests", std::move(periods)},
        {"integral_drift", std::move(drift)},
        {"tolerances", {{"trajectory", tol.trajectory}, {"drift", tol.drift}, {"period", tol.period}}},
    };
}

Json to_json(const MajorantReport& report)
{
    Json failures = Json::array();
    for (const auto& f : report.failures) {
        failures.push_back({{"series", f.series}, {"i", f.i}, {"j", f.j}});
    }
    Json radii = Json::object();
    for (const auto& [name, est] : report.radius_estimates) {
        radii[name] = {{"radius", double_or_null(est.radius)},
                       {"low_confidence", est.low_confidence},
                       {"terms_used", est.terms_used}};
    }
    return {
        {"c", format_coeff(report.c)},
        {"f_hat", coeff_table(report.f_hat)},
        {"g_hat", coeff_table(report.g_hat)},
        {"h_hat", coeff_table(report.h_hat)},
        {"bound_series", coeff_table(report.bound_series)},
        {"dominance_ok", report.dominance_ok},
        {"failures", std::move(failures)},
        {"radius_estimates", std::move(radii)},
    };
}

CommandResult run_check(const JobConfig& config)
{
    config.validate();
    LoadedField lf = load_field(config);
    const auto& x = lf.field;
    Json doc{{"schema_version", schema_version}, {"command", "check"}, {"order", config.order},
             {"dropped_degree", lf.dropped_degree}};
    auto a = jacobian_origin(x);
    doc["jacobian"] = Json::array({Json::array({format_coeff(a(0, 0)), format_coeff(a(0, 1))}),
                                   Json::array({format_coeff(a(1, 0)), format_coeff(a(1, 1))})});
    auto residual = reversibility_residual(x, standard_involution());
    auto off = first_offender(residual);
    doc["reversible"] = !off;
    if (off) {
        std::string mono = monomial_name(off->i, off->j, config.vars);
        doc["first_offender"] = {{"component", off->component},
                                 {"monomial", mono},
                                 {"coefficient", format_coeff(off->coefficient)}};
        doc["summary"] = "not reversible; residual " + format_coeff(off->coefficient) + "*" + mono + " in component " +
                         std::to_string(off->component);
    }
    // a singular linear part is reported as degenerate whether or not the
    // field is reversible
    if (is_zero(a.det())) {
        if (!off) {
            doc["kind"] = to_json(classify(x));
        }
        doc["summary"] = std::string(off ? "not reversible; " : "reversible; ") + "degenerate; det = 0";
        return {std::move(doc), ExitCode::degenerate};
    }
    if (off) {
        return {std::move(doc), ExitCode::not_reversible};
    }
    EquilibriumKind kind = classify(x);
    doc["kind"] = to_json(kind);
    switch (kind.type) {
    case EquilibriumKind::Type::saddle:
        doc["summary"] = "reversible; saddle; lambda^2 = " + format_coeff(kind.modulus_squared);
        return {std::move(doc), ExitCode::ok};
    case EquilibriumKind::Type::center:
        doc["summary"] = "reversible; center; omega^2 = " + format_coeff(kind.modulus_squared);
        return {std::move(doc), ExitCode::ok};
    case EquilibriumKind::Type::degenerate: break;
    }
    doc["summary"] = "reversible; degenerate; det = 0";
    return {std::move(doc), ExitCode::degenerate};
}

CommandResult run_normalform(const JobConfig& config)
{
    Pipeline pl = run_pipeline(config);
    Json doc = to_json(pl.result, pl.ham);
    doc["schema_version"] = schema_version;
    doc["command"] = "normalform";
    doc["dropped_degree"] = pl.loaded.dropped_degree;
    doc["symbolic_residual_zero"] = symbolic_residual_zero(pl, pl.result.h_bar);
    return {std::move(doc), ExitCode::ok};
}

CommandResult run_verify(const JobConfig& config)
{
    Pipeline pl = run_pipeline(config);
    SeriesPair<Surd> h_bar = perturbed(pl.result.h_bar, config.perturb_hbar);
    Json doc{{"schema_version", schema_version}, {"command", "verify"}, {"kind", to_json(pl.result.kind)}};
    if (config.perturb_hbar) {
        const auto& p = *config.perturb_hbar;
        doc["perturbation"] = {{"component", p.component}, {"i", p.i}, {"j", p.j}, {"delta", format_coeff(p.delta)}};
    }
    try {
        VerificationReport rep = verify_conjugacy(pl.loaded.field, h_bar, pl.ham, config.verify);
        std::string failed = rep.first_failure(config.tolerances);
        doc["report"] = to_json(rep, config.tolerances);
        doc["passed"] = failed.empty();
        doc["failed_check"] = failed.empty() ? Json(nullptr) : Json(failed);
        return {std::move(doc), failed.empty() ? ExitCode::ok : ExitCode::verification};
    } catch (const Divergence& e) {
        doc["passed"] = false;
        doc["failed_check"] = "divergence";
        doc["error"] = e.what();
        return {std::move(doc), ExitCode::verification};
    }
}

CommandResult run_diagnose(const JobConfig& config)
{
    Pipeline pl = run_pipeline(config);
    Json doc = to_json(majorant_bound(pl.result));
    doc["schema_version"] = schema_version;
    doc["command"] = "diagnose";
    doc["order"] = config.order;
    doc["kind"] = to_json(pl.result.kind);
    return {std::move(doc), ExitCode::ok};
}

CommandResult run_plotdata(const JobConfig& config)
{
    Json files = Json::array();
    Json doc{{"schema_version", schema_version}, {"command", "plotdata"}};
    if (!config.plot.level_set && !config.plot.trajectory) {
        doc["files"] = std::move(files);
        return {std::move(doc), ExitCode::ok};
    }
    Pipeline pl = run_pipeline(config);
    namespace fs = std::filesystem;
    fs::path dir(config.plot.directory);
    fs::create_directories(dir);
    NumericMap hb(pl.result.h_bar);
    NumericPoly h(pl.ham.H);

    auto open = [](const fs::path& path) {
        std::FILE* f = std::fopen(path.string().c_str(), "w");
        if (f == nullptr) {
            throw Error("cannot open " + path.string() + " for writing");
        }
        return std::unique_ptr<std::FILE, int (*)(std::FILE*)>(f, &std::fclose);
    };

    if (config.plot.level_set) {
        fs::path path = dir / "level_set.csv";
        auto f = open(path);
        std::fputs("x,y,H,H_of_hbar\n", f.get());
        int n = config.plot.grid;
        double e = config.plot.extent;
        for (int a = 0; a < n; ++a) {
            double x = -e + 2 * e * a / (n - 1);
            for (int b = 0; b < n; ++b) {
                double y = -e + 2 * e * b / (n - 1);
                Point image = hb({x, y});
                write_csv_row(f.get(), {x, y, h(x, y), h(image[0], image[1])});
            }
        }
        files.push_back(path.string());
    }
    if (config.plot.trajectory) {
        fs::path path = dir / "trajectory.csv";
        NumericMap xn(pl.loaded.field);
        NumericMap xh(pl.ham.X_H);
        Point q0{config.verify.amplitude, 0.0};
        long steps = std::lround(config.verify.horizon / config.verify.dt);
        auto orbit = integrate_rk4(xn, q0, config.verify.dt, steps);
        auto image = integrate_rk4(xh, hb(q0), config.verify.dt, steps);
        auto f = open(path);
        std::fputs("t,x,y,hx,hy,yx,yy\n", f.get());
        for (std::size_t k = 0; k < orbit.size(); ++k) {
            Point mapped = hb(orbit[k]);
            write_csv_row(f.get(), {static_cast<double>(k) * config.verify.dt, orbit[k][0], orbit[k][1], mapped[0],
                                    mapped[1], image[k][0], image[k][1]});
        }
        files.push_back(path.string());
    }
    doc["files"] = std::move(files);
    return {std::move(doc), ExitCode::ok};
}

CommandResult error_result(const std::string& command, const std::exception& e)
{
    ExitCode code = exit_code_for(e);
    Json doc{{"schema_version", schema_version}, {"command", command}, {"error", e.what()}, {"exit_code", static_cast<int>(code)}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
        doc["position"] = pe->position();
    }
    return {std::move(doc), code};
}

std::string render(const Json& doc) { return doc.dump(2) + "\n"; }

} // namespace revham
