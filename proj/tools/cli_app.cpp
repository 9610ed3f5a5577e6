#include "cli_app.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "revham/pipeline.hpp"

namespace revham::cli {

namespace {

struct Overrides {
    std::string config_path;
    std::string config_dir;
    std::optional<std::string> p;
    std::optional<std::string> q;
    std::optional<std::string> vars;
    std::optional<int> order;
    std::optional<double> amplitude;
    std::optional<double> dt;
    std::optional<double> horizon;
    std::optional<int> grid;
    std::optional<double> extent;
    std::optional<std::string> perturb;
    std::string out;
    std::string format = "json";
    bool strict_degree = false;
    bool no_symbolic = false;
    bool no_numeric = false;
    bool no_periods = false;
    bool no_level_set = false;
    bool no_trajectory = false;
};

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot read config " + path.string());
    }
    return Json::parse(in);
}

Perturbation parse_perturbation(const std::string& spec)
{
    // component:i:j
    Perturbation p;
    char c1 = 0;
    char c2 = 0;
    std::istringstream in(spec);
    if (!(in >> p.component >> c1 >> p.i >> c2 >> p.j) || c1 != ':' || c2 != ':' || !in.eof()) {
        throw ParseError("perturbation must look like component:i:j", 0);
    }
    return p;
}

JobConfig apply_overrides(JobConfig c, const Overrides& o)
{
    if (o.p) {
        c.p = *o.p;
        c.p_table.reset();
    }
    if (o.q) {
        c.q = *o.q;
        c.q_table.reset();
    }
    if (o.vars) {
        auto comma = o.vars->find(',');
        if (comma == std::string::npos) {
            throw ParseError("--vars expects two names separated by a comma", 0);
        }
        c.vars = {o.vars->substr(0, comma), o.vars->substr(comma + 1)};
    }
    if (o.order) {
        c.order = *o.order;
    }
    if (o.amplitude) {
        c.verify.amplitude = *o.amplitude;
    }
    if (o.dt) {
        c.verify.dt = *o.dt;
    }
    if (o.horizon) {
        c.verify.horizon = *o.horizon;
    }
    if (o.grid) {
        c.plot.grid = *o.grid;
    }
    if (o.extent) {
        c.plot.extent = *o.extent;
    }
    if (o.perturb) {
        c.perturb_hbar = parse_perturbation(*o.perturb);
    }
    c.strict_degree = c.strict_degree || o.strict_degree;
    c.verify.symbolic = c.verify.symbolic && !o.no_symbolic;
    c.verify.numeric = c.verify.numeric && !o.no_numeric;
    c.verify.periods = c.verify.periods && !o.no_periods;
    c.plot.level_set = c.plot.level_set && !o.no_level_set;
    c.plot.trajectory = c.plot.trajectory && !o.no_trajectory;
    return c;
}

CommandResult dispatch(const std::string& command, const JobConfig& config)
{
    try {
        if (command == "check") {
            return run_check(config);
        }
        if (command == "normalform") {
            return run_normalform(config);
        }
        if (command == "verify") {
            return run_verify(config);
        }
        if (command == "diagnose") {
            return run_diagnose(config);
        }
        return run_plotdata(config);
    } catch (const std::exception& e) {
        return error_result(command, e);
    }
}

void emit(const CommandResult& r, const std::string& path, std::ostream& out)
{
    std::string text = render(r.document);
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error("cannot write " + path);
    }
    f << text;
}

void add_common(CLI::App* sub, Overrides& o)
{
    sub->add_option("--config", o.config_path, "JSON job file");
    sub->add_option("--config-dir", o.config_dir, "Run every *.json job in a directory");
    sub->add_option("--P", o.p, "First component of the field");
    sub->add_option("--Q", o.q, "Second component of the field");
    sub->add_option("--vars", o.vars, "Variable names, e.g. u,v");
    sub->add_option("--order", o.order, "Truncation order N");
    sub->add_option("--amplitude", o.amplitude, "Initial offset of numerical checks");
    sub->add_option("--dt", o.dt, "RK4 step");
    sub->add_option("--horizon", o.horizon, "Integration time");
    sub->add_option("--out", o.out, "Output file (directory for plotdata and --config-dir)");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--strict-degree", o.strict_degree, "Reject terms above the truncation order");
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Hamiltonian normal forms of reversible planar vector fields", "revham"};
    app.require_subcommand(1);
    Overrides o;
    auto* check = app.add_subcommand("check", "Check reversibility and classify the origin");
    auto* normalform = app.add_subcommand("normalform", "Compute the normal form, conjugacy and Hamiltonian");
    auto* verify = app.add_subcommand("verify", "Verify the conjugacy symbolically and numerically");
    auto* plotdata = app.add_subcommand("plotdata", "Write level-set and trajectory CSV files");
    auto* diagnose = app.add_subcommand("diagnose", "Majorant bounds and radius estimates");
    for (auto* sub : {check, normalform, verify, plotdata, diagnose}) {
        add_common(sub, o);
    }
    verify->add_option("--perturb-hbar", o.perturb, "Add 1/1000 to coefficient component:i:j of the conjugacy");
    verify->add_flag("--no-symbolic", o.no_symbolic);
    verify->add_flag("--no-numeric", o.no_numeric);
    verify->add_flag("--no-periods", o.no_periods);
    plotdata->add_flag("--no-level-set", o.no_level_set);
    plotdata->add_flag("--no-trajectory", o.no_trajectory);
    plotdata->add_option("--grid", o.grid, "Level-set samples per side");
    plotdata->add_option("--extent", o.extent, "Level-set half width");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : static_cast<int>(ExitCode::parse);
    }

    std::string command = app.get_subcommands().front()->get_name();
    if (o.format == "csv" && command != "plotdata") {
        err << "--format csv applies to plotdata only\n";
        return static_cast<int>(ExitCode::parse);
    }

    auto load = [&](const std::filesystem::path& path) {
        JobConfig base;
        if (!path.empty()) {
            base = config_from_json(read_json_file(path));
        }
        JobConfig c = apply_overrides(std::move(base), o);
        if (command == "plotdata" && !o.out.empty()) {
            c.plot.directory = o.out;
        }
        return c;
    };

    try {
        if (!o.config_dir.empty()) {
            std::vector<std::filesystem::path> jobs;
            for (const auto& entry : std::filesystem::directory_iterator(o.config_dir)) {
                if (entry.path().extension() == ".json") {
                    jobs.push_back(entry.path());
                }
            }
            std::sort(jobs.begin(), jobs.end());
            std::filesystem::path out_dir = o.out.empty() ? std::filesystem::path(".") : std::filesystem::path(o.out);
            std::filesystem::create_directories(out_dir);
            int worst = 0;
            for (const auto& job : jobs) {
                CommandResult r;
                try {
                    JobConfig c = load(job);
                    if (command == "plotdata") {
                        c.plot.directory = (out_dir / job.stem()).string();
                    }
                    r = dispatch(command, c);
                } catch (const std::exception& e) {
                    r = error_result(command, e);
                }
                emit(r, (out_dir / (job.stem().string() + "." + command + ".json")).string(), out);
                worst = std::max(worst, static_cast<int>(r.code));
            }
            return worst;
        }
        CommandResult r;
        try {
            r = dispatch(command, load(o.config_path));
        } catch (const std::exception& e) {
            r = error_result(command, e);
        }
        if (r.code != ExitCode::ok && r.document.contains("error")) {
            err << "revham " << command << ": " << r.document["error"].get<std::string>() << "\n";
        }
        emit(r, command == "plotdata" ? std::string() : o.out, out);
        return static_cast<int>(r.code);
    } catch (const std::exception& e) {
        err << "revham: " << e.what() << "\n";
        return static_cast<int>(ExitCode::failure);
    }
}

} // namespace revham::cli
