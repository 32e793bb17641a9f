#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <cstdio>
#include <set>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "compspec/cli.hpp"

using Json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = compspec::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kFixture = R"({"num":[[0,0],[1,0]],"den":[[2,0],[-1,0]]})";
const std::string kSquare = R"({"num":[0,0,1],"den":[1]})";

double re(const Json& c) { return c.at(0).get<double>(); }
double im(const Json& c) { return c.at(1).get<double>(); }

}  // namespace

TEST_CASE("analyze") {
    const auto r = run({"analyze", kFixture});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    CHECK(j["classification"]["kind"] == "Schroeder");
    CHECK(re(j["classification"]["alpha"]) == 0.0);
    CHECK(std::abs(re(j["classification"]["multiplier"]) - 0.5) < 1e-15);

    const auto id = run({"analyze", R"({"num":[0,1],"den":[1]})"});
    CHECK(id.code == 0);
    CHECK(id.json()["classification"]["kind"] == "Automorphism");

    const auto pole = run({"analyze", R"({"num":[1],"den":[-0.5,1]})"});
    CHECK(pole.code == 2);
    CHECK(pole.json()["error"]["name"] == "PoleInDisc");
    CHECK_FALSE(pole.err.empty());

    const auto bad = run({"analyze", "{not json"});
    CHECK(bad.code == 1);
    CHECK(bad.json()["error"]["name"] == "ParseError");
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"--order", "4", "analyze", kFixture}).code == 1);
    CHECK(run({"--order", "16", "--max-n", "9", "analyze", kFixture}).code == 1);
    CHECK(run({"--tol", "no_such_tol=1", "analyze", kFixture}).code == 1);
    CHECK(run({"--format", "xml", "analyze", kFixture}).code == 1);
    CHECK(run({"solve", kFixture, "--lambda", "abc", "--g", kSquare}).code == 1);
}

TEST_CASE("koenigs tables") {
    const auto j = run({"koenigs", kFixture}).json();
    const auto& c = j["kappa"]["coeffs"];
    REQUIRE(c.size() == 65);
    CHECK(re(c[0]) == 0.0);
    for (std::size_t k = 1; k <= 64; ++k) CHECK(std::abs(re(c[k]) - 1.0) < 1e-10);

    const auto h = run({"--order", "8", "koenigs", R"({"num":[0,0.5],"den":[1]})"}).json();
    const auto& hc = h["kappa"]["coeffs"];
    REQUIRE(hc.size() == 9);
    CHECK(re(hc[1]) == 1.0);
    for (std::size_t k = 2; k <= 8; ++k) CHECK(std::abs(re(hc[k])) + std::abs(im(hc[k])) < 1e-15);
}

TEST_CASE("project") {
    const auto j = run({"project", kFixture, "--n", "1", "--f", R"({"num":[0,1],"den":[1]})"}).json();
    CHECK(std::abs(re(j["psi"]) - 1.0) < 1e-14);
    CHECK(std::abs(re(j["functional"][1]) - 1.0) < 1e-14);
    const auto j2 = run({"project", kFixture, "--n", "2"}).json();
    CHECK(std::abs(re(j2["functional"][1]) + 1.0) < 1e-14);
    CHECK(std::abs(re(j2["functional"][2]) - 0.5) < 1e-14);
    CHECK(run({"project", kFixture, "--n", "13"}).code == 2);
}

TEST_CASE("solve") {
    const auto j = run({"solve", kFixture, "--lambda", "3,0", "--g", R"({"num":[0,0,1],"den":[1,-2,1]})"}).json();
    CHECK(j["diagnostics"]["residual"].get<double>() < 1e-10);
    for (const auto& p : j["grid"]) {
        const std::complex<double> z{re(p["z"]), im(p["z"])};
        const std::complex<double> k = z / (1.0 - z);
        const std::complex<double> f{re(p["f"]), im(p["f"])};
        CHECK(std::abs(f - k * k / 2.75) < 1e-12);
    }

    const auto coll = run({"solve", kFixture, "--lambda", "0.5,0", "--g", R"({"num":[1],"den":[1]})"});
    CHECK(coll.code == 2);
    CHECK(coll.json()["error"]["name"] == "EigenvalueCollision");

    const auto eig =
        run({"solve", kFixture, "--at-eigenvalue", "0", "--g", R"({"num":[0,1],"den":[1,-1]})", "--mode", "series"});
    REQUIRE(eig.code == 0);
    const auto ej = eig.json();
    CHECK(std::abs(re(ej["f_series"]["coeffs"][5]) - 2.0) < 1e-10);

    const auto inc = run({"solve", kFixture, "--at-eigenvalue", "1", "--g", R"({"num":[0,1],"den":[1,-1]})"});
    CHECK(inc.code == 2);
    CHECK(inc.json()["error"]["name"] == "IncompatibleRHS");

    const auto series_g = run({"solve", kFixture, "--lambda", "2,0.5", "--g",
                               R"({"series":{"center":[0,0],"coeffs":[1,0.5,0.25]}})", "--mode", "series"});
    CHECK(series_g.code == 0);

    const auto sup = run({"solve", kSquare, "--lambda", "3,0", "--g", R"({"num":[1],"den":[1]})"}).json();
    for (const auto& p : sup["grid"]) CHECK(std::abs(re(p["f"]) - 0.5) < 1e-15);
    CHECK(run({"solve", kSquare, "--lambda", "1,0", "--g", R"({"num":[1],"den":[1]})"}).code == 2);

    // a residual tolerance nobody can meet is a numerical failure
    const auto tight = run({"--tol", "solver_residual_tol=1e-30", "solve", kFixture, "--lambda", "0.7,0.2", "--g",
                            R"({"num":[1,2],"den":[3,1]})"});
    CHECK(tight.code == 3);
    CHECK(tight.json()["error"]["name"] == "ResidualTooLarge");
}

TEST_CASE("spectrum") {
    const auto j = run({"--max-n", "4", "spectrum", kFixture}).json();
    std::vector<double> v;
    for (const auto& p : j["spectrum"]) v.push_back(re(p["value"]));
    CHECK(v == std::vector<double>{0.0, 1.0, 0.5, 0.25, 0.125, 0.0625});
    CHECK(j["compact"] == false);

    const auto sq = run({"spectrum", kSquare}).json();
    REQUIRE(sq["spectrum"].size() == 2);
    CHECK(re(sq["spectrum"][0]["value"]) == 0.0);
    CHECK(re(sq["spectrum"][1]["value"]) == 1.0);

    const auto withc = run({"--max-n", "4", "spectrum", kFixture, "--contour-n", "1"}).json();
    REQUIRE(withc["contour_checks"].size() >= 1);
    for (const auto& c : withc["contour_checks"]) CHECK(c["error"].get<double>() < 1e-6);

    CHECK(run({"spectrum", R"({"num":[0.5,1],"den":[1,0.5]})"}).code == 2);
}

TEST_CASE("verify suites") {
    const auto all = run({"verify", kFixture, "--suite", "all"});
    CHECK(all.code == 0);
    const auto j = all.json();
    CHECK(j["all_pass"] == true);
    std::set<std::string> suites;
    for (const auto& c : j["checks"]) {
        suites.insert(c["suite"].get<std::string>());
        CHECK(c["pass"] == true);
    }
    CHECK(suites == std::set<std::string>{"koenigs", "projections", "contour"});
    CHECK(run({"verify", kFixture, "--suite", "koenigs"}).json()["checks"].size() == 6);
    CHECK(run({"verify", kFixture, "--suite", "nope"}).code == 1);
}

TEST_CASE("hardy and compactness") {
    const auto h = run({"hardy", kFixture, "--a", "-1", "--p", "1", "--K", "1024"}).json();
    CHECK(h["member"] == true);
    CHECK(h["reference_member"] == true);
    CHECK(std::abs(h["hurst"]["essential_radius"].get<double>() - std::pow(2.0, -1.5)) < 1e-15);
    const auto h2 = run({"hardy", kFixture, "--a", "-1", "--p", "2", "--K", "1024"}).json();
    CHECK(h2["member"] == false);
    CHECK(run({"hardy", kFixture, "--a", "-1", "--p", "1", "--K", "100"}).code != 0);

    const auto c1 = run({"compactness", R"({"num":[0,0.5],"den":[1]})"}).json();
    CHECK(c1["compact"] == true);
    const auto c2 = run({"compactness", kFixture}).json();
    CHECK(c2["compact"] == false);
    const auto c3 = run({"compactness", R"({"num":[0.05,0.25],"den":[1]})"}).json();
    CHECK(c3["compact"] == true);
}

TEST_CASE("round trip and determinism") {
    const std::vector<std::vector<std::string>> cmds{
        {"analyze", kFixture},
        {"koenigs", kFixture},
        {"project", kFixture, "--n", "2"},
        {"solve", kFixture, "--lambda", "0.3,0.4", "--g", R"({"num":[1,2],"den":[3,1]})", "--mode", "series"},
        {"spectrum", kFixture, "--contour-n", "0"},
        {"hardy", kFixture, "--a", "-1", "--p", "1", "--K", "1024"},
        {"compactness", kFixture},
    };
    for (const auto& c : cmds) {
        const auto a = run(c);
        const auto b = run(c);
        CAPTURE(c[0]);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        const auto j = a.json();
        CHECK(Json::parse(j.dump()) == j);
        CHECK(j["command"] == c[0]);
    }
    const auto pretty = run({"--format", "pretty", "analyze", kFixture});
    CHECK(pretty.out.find("\n  ") != std::string::npos);
    CHECK(Json::parse(pretty.out) == run({"analyze", kFixture}).json());
}

TEST_CASE("file input and output") {
    const std::string in = "cli_test_symbol.json", out = "cli_test_report.json";
    std::ofstream(in) << kFixture;
    const auto r = run({"--output", out, "analyze", in});
    CHECK(r.code == 0);
    std::ifstream f(out);
    const Json j = Json::parse(f);
    CHECK(j["classification"]["kind"] == "Schroeder");
    std::remove(in.c_str());
    std::remove(out.c_str());
    CHECK(run({"analyze", "does_not_exist.json"}).code == 1);
}
