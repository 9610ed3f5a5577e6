#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "revham/pipeline.hpp"

using namespace revham;
namespace fs = std::filesystem;

namespace {

JobConfig job(const char* p, const char* q, int order = 6)
{
    JobConfig c;
    c.p = p;
    c.q = q;
    c.order = order;
    return c;
}

fs::path scratch(const std::string& name)
{
    fs::path dir = fs::temp_directory_path() / ("revham_pipeline_" + name);
    fs::remove_all(dir);
    return dir;
}

std::size_t count_lines(const fs::path& path)
{
    std::ifstream in(path);
    std::size_t n = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++n;
    }
    return n;
}

} // namespace

TEST_CASE("check documents")
{
    auto ok = run_check(job("v", "u"));
    CHECK(ok.code == ExitCode::ok);
    CHECK(ok.document["summary"] == "reversible; saddle; lambda^2 = 1");
    CHECK(ok.document["schema_version"] == schema_version);
    CHECK(ok.document["jacobian"] == Json::parse(R"([["0","1"],["1","0"]])"));

    auto bad = run_check(job("v+u^2", "u"));
    CHECK(bad.code == ExitCode::not_reversible);
    CHECK(bad.document["reversible"] == false);
    CHECK(bad.document["first_offender"]["component"] == 1);
    CHECK(bad.document["first_offender"]["monomial"] == "u^2");
    CHECK(bad.document["first_offender"]["coefficient"] == "2");

    auto deg = run_check(job("v", "v"));
    CHECK(deg.code == ExitCode::degenerate);

    auto center = run_check(job("2*v", "-3*u"));
    CHECK(center.code == ExitCode::ok);
    CHECK(center.document["kind"]["type"] == "center");
    CHECK(center.document["summary"] == "reversible; center; omega^2 = 6");
}

TEST_CASE("normal form documents")
{
    auto sad = run_normalform(job("v", "u"));
    CHECK(sad.code == ExitCode::ok);
    CHECK(sad.document["g"] == Json::array());
    CHECK(sad.document["H"] == Json::parse(R"([[2,0,"-1/2"],[0,2,"1/2"]])"));
    CHECK(sad.document["h_bar"]["first"] == Json::parse(R"([[1,0,"1"]])"));
    CHECK(sad.document["h_bar"]["second"] == Json::parse(R"([[0,1,"1"]])"));

    auto cen = run_normalform(job("v", "-u"));
    CHECK(cen.document["H"] == Json::parse(R"([[2,0,"1/2"],[0,2,"1/2"]])"));

    auto nl = run_normalform(job("v+u*v", "u+u^2", 10));
    CHECK(nl.document["symbolic_residual_zero"] == true);
    CHECK(nl.document["g"] == Json::parse(R"([[1,"-2"],[2,"-6"],[3,"-34"],[4,"-238"]])"));
    CHECK(nl.document["resonance_log"].size() == 9);
}

TEST_CASE("rendering is byte-deterministic")
{
    auto a = render(run_normalform(job("v+u*v", "-u+u^2-v^2", 8)).document);
    auto b = render(run_normalform(job("v+u*v", "-u+u^2-v^2", 8)).document);
    CHECK(a == b);
    CHECK(a.back() == '\n');
    CHECK(a.find("\"schema_version\": 1") != std::string::npos);

    // keys are sorted
    auto doc = run_diagnose(job("v+u*v", "u+u^2", 6)).document;
    std::string prev;
    for (const auto& [key, value] : doc.items()) {
        CHECK(prev < key);
        prev = key;
    }
}

TEST_CASE("config documents")
{
    auto doc = Json::parse(R"({
        "P": "y + x*y", "Q": "x + x^2", "vars": ["x", "y"], "order": 7,
        "verify": {"amplitude": 0.02, "periods": false},
        "tolerances": {"trajectory": 1e-5},
        "plot": {"grid": 11}
    })");
    JobConfig c = config_from_json(doc);
    CHECK(c.p == "y + x*y");
    CHECK(c.vars.first == "x");
    CHECK(c.vars.second == "y");
    CHECK(c.order == 7);
    CHECK(c.verify.amplitude == 0.02);
    CHECK(c.verify.periods == false);
    CHECK(c.verify.numeric == true);
    CHECK(c.tolerances.trajectory == 1e-5);
    CHECK(c.tolerances.drift == 1e-8);
    CHECK(c.plot.grid == 11);
    CHECK(run_check(c).code == ExitCode::ok);

    CHECK_THROWS_AS(config_from_json(Json::array()), Error);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"vars": ["x"]})")), Error);

    JobConfig low = job("v", "u", 1);
    CHECK_THROWS_AS(low.validate(), Error);
    JobConfig neg = job("v", "u");
    neg.verify.dt = 0;
    CHECK_THROWS_AS(neg.validate(), Error);
}

TEST_CASE("coefficient tables")
{
    auto s = series_from_table(Json::parse(R"([[0,1,"1"],[1,1,"-2/4"],[9,0,"5"]])"), 4);
    CHECK(coeff_table(s) == Json::parse(R"([[0,1,"1"],[1,1,"-1/2"]])"));
    CHECK_THROWS_AS(series_from_table(Json::parse(R"([[0,1,"x"]])"), 4), ParseError);
    CHECK_THROWS_AS(series_from_table(Json::parse(R"([[0,1]])"), 4), ParseError);

    JobConfig c;
    c.p_table = Json::parse(R"([[0,1,"1"]])");
    c.q_table = Json::parse(R"([[1,0,"1"],[2,0,"1"]])");
    auto tab = run_normalform(c);
    auto txt = run_normalform(job("v", "u+u^2", 10));
    CHECK(render(tab.document) == render(txt.document));
}

TEST_CASE("exit code mapping")
{
    CHECK(exit_code_for(ParseError("x", 0)) == ExitCode::parse);
    CHECK(exit_code_for(NotReversible("x")) == ExitCode::not_reversible);
    CHECK(exit_code_for(DegenerateJacobian("x")) == ExitCode::degenerate);
    CHECK(exit_code_for(Error("x")) == ExitCode::failure);

    auto r = error_result("normalform", ParseError("bad token", 3));
    CHECK(r.code == ExitCode::parse);
    CHECK(r.document["position"] == 3);
    CHECK(r.document["exit_code"] == 2);

    JobConfig c = job("v+u^2", "u");
    try {
        run_normalform(c);
        FAIL("expected NotReversible");
    } catch (const std::exception& e) {
        CHECK(exit_code_for(e) == ExitCode::not_reversible);
    }
}

TEST_CASE("verify documents")
{
    auto lin = run_verify(job("v", "-u"));
    CHECK(lin.code == ExitCode::ok);
    CHECK(lin.document["passed"] == true);
    CHECK(lin.document["failed_check"].is_null());

    JobConfig bad = job("v+u*v", "-u+u^2", 8);
    bad.perturb_hbar = Perturbation{2, 1, 1};
    auto r = run_verify(bad);
    CHECK(r.code == ExitCode::verification);
    CHECK(r.document["failed_check"] == "symbolic_residual");
    CHECK(r.document["perturbation"]["delta"] == "1/1000");
}

TEST_CASE("plot data")
{
    auto dir = scratch("plot");
    JobConfig c = job("v+u*v", "-u+u^2", 8);
    c.plot.directory = dir.string();
    auto r = run_plotdata(c);
    CHECK(r.code == ExitCode::ok);
    REQUIRE(fs::exists(dir / "level_set.csv"));
    REQUIRE(fs::exists(dir / "trajectory.csv"));
    CHECK(count_lines(dir / "level_set.csv") == 10201 + 1);
    std::ifstream traj(dir / "trajectory.csv");
    std::string header;
    std::getline(traj, header);
    CHECK(header == "t,x,y,hx,hy,yx,yy");
    CHECK(count_lines(dir / "trajectory.csv") == 5001 + 1);

    auto empty = scratch("empty");
    c.plot.directory = empty.string();
    c.plot.level_set = false;
    c.plot.trajectory = false;
    auto none = run_plotdata(c);
    CHECK(none.code == ExitCode::ok);
    CHECK(none.document["files"].empty());
    CHECK(!fs::exists(empty));
    fs::remove_all(dir);
}
