#pragma once

// Job configuration, end-to-end runs and their JSON documents. Shared by the
// command-line tool and the Python module.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "revham/diagnostics.hpp"
#include "revham/parser.hpp"
#include "revham/verify.hpp"

namespace revham {

using Json = nlohmann::json;

inline constexpr int schema_version = 1;

/// Stable process exit codes.
enum class ExitCode : int {
    ok = 0,
    failure = 1,
    parse = 2,
    not_reversible = 3,
    degenerate = 4,
    verification = 5,
};

/// Maps a library exception to its exit code.
ExitCode exit_code_for(const std::exception& e);

struct PlotOptions {
    bool level_set = true;
    bool trajectory = true;
    int grid = 101;
    double extent = 0.1;
    std::string directory = ".";
};

/// Adds 1/1000 to one coefficient of h_bar before verification.
struct Perturbation {
    int component = 1;
    int i = 0;
    int j = 0;
    Rational delta{1, 1000};
};

struct JobConfig {
    std::string p;
    std::string q;
    /// Coefficient tables [[i, j, "p/q"], ...]; take precedence over p, q.
    std::optional<Json> p_table;
    std::optional<Json> q_table;
    VarNames vars{"u", "v"};
    int order = 10;
    bool strict_degree = false;
    VerifyOptions verify;
    Tolerances tolerances;
    PlotOptions plot;
    std::optional<Perturbation> perturb_hbar;

    /// Throws Error when N < 2, amplitude <= 0 or dt <= 0.
    void validate() const;
};

/// Reads a config document; keys absent from the document keep the values
/// already in base.
JobConfig config_from_json(const Json& doc, JobConfig base = {});

struct LoadedField {
    PlanarField<Rational> field;
    bool dropped_degree = false;
};

LoadedField load_field(const JobConfig& config);

// Serialization

std::string format_coeff(const Rational& c);
std::string format_coeff(const Complex& c);
std::string format_coeff(const Surd& c);

template <class R>
Json coeff_table(const Series2<R>& s)
{
    Json rows = Json::array();
    s.for_each_term([&](int i, int j, const R& c) { rows.push_back(Json::array({i, j, format_coeff(c)})); });
    return rows;
}

template <class R>
Json coeff_table(const Series1<R>& s)
{
    Json rows = Json::array();
    s.for_each_term([&](int m, const R& c) { rows.push_back(Json::array({m, format_coeff(c)})); });
    return rows;
}

Series2<Rational> series_from_table(const Json& rows, int order);

Json to_json(const EquilibriumKind& kind);
Json to_json(const NormalFormResult& result, const HamiltonianNF& ham);
Json to_json(const VerificationReport& report, const Tolerances& tol);
Json to_json(const MajorantReport& report);

// Commands. Each returns the document to print and the exit code.

struct CommandResult {
    Json document;
    ExitCode code = ExitCode::ok;
};

CommandResult run_check(const JobConfig& config);
CommandResult run_normalform(const JobConfig& config);
CommandResult run_verify(const JobConfig& config);
CommandResult run_diagnose(const JobConfig& config);

/// Writes level-set and trajectory CSV files into config.plot.directory and
/// returns the written paths in the document.
CommandResult run_plotdata(const JobConfig& config);

/// Document for an exception raised by a command.
CommandResult error_result(const std::string& command, const std::exception& e);

/// Byte-deterministic rendering: sorted keys, two-space indent, trailing
/// newline.
std::string render(const Json& doc);

} // namespace revham
