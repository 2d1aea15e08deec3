#include "hypdef/cli.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace hypdef;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "hypdef");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content)
{
    const auto p = std::filesystem::temp_directory_path() / ("hypdef_test_" + name);
    std::ofstream(p) << content;
    return p;
}

std::size_t count_lines(const std::string& s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_SUITE("cli")
{
    TEST_CASE("figure8 verification")
    {
        const Run r = run({"verify", "figure8", "--alpha", "0.5"});
        REQUIRE(r.code == 0);
        const Json j = Json::parse(r.out);
        CHECK(j["passed"] == true);
        CHECK(j["regime"] == "SU(3,1)");
        CHECK(j["signature"] == Json::array({3, 1, 0}));
        CHECK(j["traces"]["mnm"]["trace"] == "9+3*u");
        CHECK(j["classes"]["l"]["tag"] == "parabolic-ellipto");
        CHECK(j["annotations"]["entryDenominatorLcm"] == "2");
    }

    TEST_CASE("figure8 symbolic and SU(2,2) regimes")
    {
        const Json e = Json::parse(run({"verify", "figure8", "--u-exact"}).out);
        CHECK(e["alpha"] == "u");
        CHECK(e["signature"].is_null());
        CHECK(e["passed"] == true);
        const Run r = run({"verify", "figure8", "--alpha", "2.5"});
        CHECK(r.code == 0);
        const Json j = Json::parse(r.out);
        CHECK(j["regime"] == "SU(2,2)");
        CHECK(j["classes"]["m"].is_null());
    }

    TEST_CASE("figure8 at a root of unity annotates integral traces")
    {
        const Json j = Json::parse(run({"verify", "figure8", "--alpha", "2/3pi"}).out);
        CHECK(j["annotations"]["integralTracesAtRootOfUnity"] == true);
        CHECK(j["regime"] == "degenerate");
    }

    TEST_CASE("extra trace words from a file")
    {
        const auto p = temp_file("words.txt", "m.n.m.n\n# skip\nm^2.n^-1\n");
        const Json j = Json::parse(run({"verify", "figure8", "--u-exact", "--words", p.string()}).out);
        CHECK(j["traces"].size() == 11);
        CHECK(j["checks"]["extraWordsIntegral"] == true);
        std::filesystem::remove(p);
    }

    TEST_CASE("bianchi verification")
    {
        const Run r = run({"verify", "bianchi", "--d", "7", "--target", "su31", "--u-exact"});
        REQUIRE(r.code == 0);
        const Json j = Json::parse(r.out);
        CHECK(j["traceU"] == "3+u");
        CHECK(j["relations"].size() == 4);
        CHECK(j["exact"] == true);
        const Json s = Json::parse(run({"verify", "bianchi", "--d", "7", "--target", "so41", "--theta", "1"}).out);
        CHECK(s["cusp"]["verdict"] == "nondiscrete-Z2-rational");
        CHECK(s["algebraDim"] == 25);
    }

    TEST_CASE("usage errors exit with 2")
    {
        CHECK(run({"verify", "bianchi", "--d", "4", "--target", "su31", "--u", "pi/3"}).code == 2);
        CHECK(run({"verify", "bianchi", "--d", "3", "--target", "su31", "--u", "pi/3"}).code == 2);
        CHECK(run({"verify", "figure8", "--alpha", "nonsense"}).code == 2);
        CHECK(run({"verify", "trefoil"}).code == 2);
        CHECK(run({"sweep", "figure8", "--count", "0"}).code == 2);
        CHECK(run({"orbit", "--d", "2", "--target", "su31", "--u", "pi/3", "--radius", "51"}).code == 2);
        CHECK(run({"classify", "/nonexistent/matrix.json"}).code == 2);
        CHECK(run({}).code == 2);
        const Run bad = run({"verify", "bianchi", "--d", "4", "--target", "su31", "--u", "pi/3"});
        CHECK(bad.err.find("Usage") != std::string::npos);
    }

    TEST_CASE("help exits with 0")
    {
        const Run r = run({"--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("verify") != std::string::npos);
    }

    TEST_CASE("figure8 sweep")
    {
        const Run r = run({"sweep", "figure8", "--count", "12"});
        REQUIRE(r.code == 0);
        CHECK(r.out.rfind("alpha,signature,expected,det,det_closed,class_m,class_l,margin_m,margin_l,ok\n", 0) == 0);
        CHECK(count_lines(r.out) == 13);
        CHECK(r.out.find(",false\n") == std::string::npos);
        const Run one = run({"sweep", "figure8", "--count", "1", "--start", "0.1", "--end", "0.2"});
        CHECK(count_lines(one.out) == 2);
    }

    TEST_CASE("bianchi sweep")
    {
        const Run r = run({"sweep", "bianchi", "--d", "2", "--target", "so41", "--count", "8"});
        REQUIRE(r.code == 0);
        CHECK(r.out.rfind("param,class_u,expected,margin,trace_re,trace_im,ok\n", 0) == 0);
        CHECK(count_lines(r.out) == 9);
        std::istringstream in(r.out);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            CHECK(line.find(",elliptic-boundary,") != std::string::npos);
        }
    }

    TEST_CASE("orbit output")
    {
        const Run r = run({"orbit", "--d", "2", "--target", "su31", "--u", "pi/3", "--radius", "2"});
        REQUIRE(r.code == 0);
        CHECK(r.out.rfind("m,n,Re z1,Im z1,Re z2,Im z2,v\n", 0) == 0);
        CHECK(count_lines(r.out) == 1 + 25 + 1);
        CHECK(r.out.find("# gap=") != std::string::npos);
        const Run zero = run({"orbit", "--d", "2", "--target", "su31", "--u", "pi/3", "--radius", "0"});
        CHECK(zero.out.find("0,0,0,0,0,0,0\n") != std::string::npos);
        CHECK(run({"orbit", "--d", "7", "--target", "so41", "--theta", "1", "--radius", "3", "--base",
                   "0.3,0,0.2,0.1,0"})
                  .code == 0);
        CHECK(run({"orbit", "--d", "7", "--target", "su31", "--u", "pi/3", "--base", "1,2"}).code == 2);
    }

    TEST_CASE("classify command")
    {
        const auto p = temp_file("m.json", R"({"matrix": [[1,-1,0,-0.5],[0,1,0,1],[0,0,1,0],[0,0,0,1]]})");
        const Run r = run({"classify", p.string(), "--form", "siegel"});
        REQUIRE(r.code == 0);
        const Json j = Json::parse(r.out);
        CHECK(j["class"] == "parabolic-unipotent-step3");
        CHECK(j["dimension"] == 4);

        const auto c = temp_file("c.json", R"({"matrix": [[[0,1],0],[0,[0,-1]]], "form": [[1,0],[0,-1]]})");
        const Json jc = Json::parse(run({"classify", c.string()}).out);
        CHECK(jc["class"] == "elliptic-single-point");

        const auto bad = temp_file("bad.json", R"({"matrix": [[2,0,0],[0,1,0],[0,0,1]]})");
        const Run rb = run({"classify", bad.string(), "--form", "siegel"});
        CHECK(rb.code == 1);
        CHECK(Json::parse(rb.out)["class"] == "not-an-isometry");

        const auto junk = temp_file("junk.json", "{\"matrix\": 3}");
        CHECK(run({"classify", junk.string()}).code == 2);
        for (const auto& f : {p, c, bad, junk}) {
            std::filesystem::remove(f);
        }
    }

    TEST_CASE("output file")
    {
        const auto p = std::filesystem::temp_directory_path() / "hypdef_test_out.json";
        const Run r = run({"verify", "figure8", "--alpha", "0.5", "--out", p.string()});
        CHECK(r.code == 0);
        CHECK(r.out.empty());
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        CHECK(Json::parse(ss.str())["passed"] == true);
        std::filesystem::remove(p);
    }

    TEST_CASE("tolerance from the environment")
    {
        ::setenv("HYPDEF_TOL", "1e-8", 1);
        CHECK(default_tolerance() == doctest::Approx(1e-8));
        ::setenv("HYPDEF_TOL", "abc", 1);
        CHECK_THROWS_AS(default_tolerance(), std::invalid_argument);
        CHECK(run({"verify", "figure8", "--alpha", "0.5"}).code == 2);
        ::setenv("HYPDEF_TOL", "-1", 1);
        CHECK_THROWS_AS(default_tolerance(), std::invalid_argument);
        ::unsetenv("HYPDEF_TOL");
        CHECK(default_tolerance() == doctest::Approx(1e-9));
    }

    TEST_CASE("repeated runs are byte-identical")
    {
        const std::vector<std::vector<std::string>> cmds = {
            {"verify", "figure8", "--alpha", "1.1"},
            {"verify", "bianchi", "--d", "11", "--target", "su31", "--u", "2/5pi"},
            {"sweep", "bianchi", "--d", "7", "--target", "su31", "--count", "6"},
            {"orbit", "--d", "7", "--target", "su31", "--u", "1", "--radius", "4"},
        };
        for (const auto& c : cmds) {
            CHECK(run(c).out == run(c).out);
        }
    }
}
