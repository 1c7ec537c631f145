#include "doctest.h"

#include "gkmfiber/cli.hpp"
#include "gkmfiber/json_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gkmfiber;

namespace {

struct Result {
    int status = 0;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "gkmfiber");
    std::vector<const char*> argv;
    for (const std::string& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int status = run_command_line(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::string temp_file(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("gkmfiber_test_" + name)).string();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream(path) << text;
}

} // namespace

TEST_CASE("graph subcommand")
{
    const Result r = invoke({"graph", "--series", "A", "--rank", "2", "--k", "2"});
    REQUIRE(r.status == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["vertices"].size() == 3);
    CHECK(graph_from_json(j).vertex_count() == 3);
}

TEST_CASE("verify-cs subcommand")
{
    const Result r = invoke({"verify-cs", "--series", "A", "--rank", "2", "--k", "2", "--k1", "", "--max-degree", "3"});
    REQUIRE(r.status == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["reports"].size() == 4);
    CHECK(j["reports"][0]["dim_direct"] == 1);
    CHECK(j["reports"][1]["dim_direct"] == 4);
    CHECK(j["reports"][1]["dim_cs"] == 4);
}

TEST_CASE("tower subcommand")
{
    const Result r = invoke({"tower", "--series", "B", "--rank", "2", "--max-degree", "3"});
    REQUIRE(r.status == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["class_count"] == 8);
    CHECK(j["stages"].size() == 2);
}

TEST_CASE("remaining subcommands")
{
    const Result rs = invoke({"rootsys", "--series", "B", "--rank", "2", "--k", "2"});
    REQUIRE(rs.status == 0);
    const Json j = Json::parse(rs.out);
    CHECK(j["weyl_order"] == 8);
    CHECK(j["poincare"] == Json::array({1, 1, 1, 1}));

    const Result basis = invoke({"basis", "--series", "A", "--rank", "2", "--max-degree", "3"});
    REQUIRE(basis.status == 0);
    CHECK(Json::parse(basis.out)["multiplicities"] == Json::array({1, 2, 2, 1}));

    const Result fib = invoke({"fibration", "--series", "A", "--rank", "2", "--k", "2"});
    REQUIRE(fib.status == 0);
    CHECK(fibration_from_json(Json::parse(fib.out)).base().vertex_count() == 3);

    const Result hol = invoke({"holonomy", "--series", "A", "--rank", "3", "--k", "2,3"});
    REQUIRE(hol.status == 0);
    CHECK(Json::parse(hol.out)["order"] == 6);

    const Result ten = invoke({"verify-tensor", "--series", "C", "--rank", "2", "--k", "2", "--max-degree", "3"});
    REQUIRE(ten.status == 0);
    CHECK(Json::parse(ten.out)["class_count"] == 8);

    const Result pretty = invoke({"verify-cs", "--series", "A", "--rank", "1", "--pretty"});
    CHECK(pretty.status == 0);
    CHECK(pretty.out.find("dim_direct") != std::string::npos);
}

TEST_CASE("invalid input exits with status 2")
{
    CHECK(invoke({"graph", "--series", "E", "--rank", "2"}).status == 2);
    CHECK(invoke({"graph", "--series", "A", "--rank", "2", "--k", "5"}).status == 2);
    CHECK(invoke({"graph", "--rank", "2"}).status == 2);
    CHECK(invoke({"frobnicate"}).status == 2);
    CHECK(invoke({"graph", "--series", "A", "--rank", "2", "--max-degree", "x"}).status == 2);
    CHECK(invoke({"fibration", "--series", "A", "--rank", "3", "--k1", "1", "--k", "2"}).status == 2);
    CHECK(invoke({"tower", "--series", "A", "--rank", "7", "--max-group-order", "100"}).status == 2);
    CHECK(invoke({"holonomy", "--series", "B", "--rank", "3", "--k", "2,3", "--max-group-order", "5"}).status == 2);

    const std::string path = temp_file("bad_graph.json");
    Json g = graph_to_json(build_homogeneous_graph(build_root_system(Series::A, 2), IsotropyDatum::parse("2")));
    g["edges"][2]["weight"] = "oops";
    write_file(path, g.dump());
    const Result r = invoke({"graph", "--input", path});
    CHECK(r.status == 2);
    CHECK(r.err.find("edges[2].weight") != std::string::npos);

    write_file(path, "{\"dim_t\": 2, ");
    CHECK(invoke({"graph", "--input", path}).status == 2);
    std::filesystem::remove(path);
}

TEST_CASE("a corrupted fibration fails balancedness with status 1")
{
    const GkmFibration f =
        build_homogeneous_fibration(build_root_system(Series::A, 2), {}, IsotropyDatum::parse("2")).fibration;
    Json j = fibration_to_json(f);
    // Keep only one direction per base edge so the corruption is not an inconsistency.
    Json data = Json::object();
    for (std::size_t e : f.base().undirected_edges())
        data[std::to_string(e)] = j["edge_data"][std::to_string(e)];
    const std::string bad = std::to_string(f.base().undirected_edges()[2]);
    data[bad]["twist"][0][0] = Json::array({5, 1});
    j["edge_data"] = data;

    const std::string path = temp_file("corrupt_fibration.json");
    write_file(path, j.dump());
    const Result r = invoke({"fibration", "--input", path});
    CHECK(r.status == 1);
    const Json out = Json::parse(r.out);
    int failures = 0;
    for (const Json& entry : out["balance"])
        if (entry["pass"] == false) {
            ++failures;
            CHECK(std::to_string(entry["edge"].get<std::size_t>()) == bad);
        }
    CHECK(failures == 1);
    std::filesystem::remove(path);
}

TEST_CASE("reports are deterministic and written to --out")
{
    const std::vector<std::string> args{"tower", "--series", "A", "--rank", "2", "--max-degree", "3"};
    CHECK(invoke(args).out == invoke(args).out);
    const std::string path = temp_file("out.json");
    std::vector<std::string> with_out = args;
    with_out.insert(with_out.end(), {"--out", path});
    const Result r = invoke(with_out);
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == invoke(args).out);
    std::filesystem::remove(path);
}

TEST_CASE("the group order bound comes from the environment when the flag is absent")
{
    ::setenv("GKM_MAX_GROUP_ORDER", "4", 1);
    CHECK(invoke({"holonomy", "--series", "A", "--rank", "3", "--k", "2,3"}).status == 2);
    CHECK(invoke({"holonomy", "--series", "A", "--rank", "3", "--k", "2,3", "--max-group-order", "100"}).status == 0);
    ::unsetenv("GKM_MAX_GROUP_ORDER");
    CHECK(invoke({"holonomy", "--series", "A", "--rank", "3", "--k", "2,3"}).status == 0);
}
