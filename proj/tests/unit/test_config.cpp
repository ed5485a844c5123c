#include "egdg/config.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace egdg;

TEST_CASE("parse_config sections, comments and types")
{
    const Config c = parse_config(R"(
# top comment
[problem]
problem = "manufactured-1d"   # trailing comment
theta = 1.0

[discretization]
q = 3
flux = sommerfeld
[mesh]
N = [100, 200, 400]
[output]
out = "dir with # hash"
flag = true
)");
    CHECK(c.get_string("problem.problem", "") == "manufactured-1d");
    CHECK(c.get_double("problem.theta", 0.0) == 1.0);
    CHECK(c.get_int("discretization.q", 0) == 3);
    CHECK(c.get_string("discretization.flux", "") == "sommerfeld");
    CHECK(c.get_int_list("mesh.N", {}) == std::vector<int>{100, 200, 400});
    CHECK(c.get_string("output.out", "") == "dir with # hash");
    CHECK(c.get_bool("output.flag", false));
    CHECK(c.get_int("missing.key", 42) == 42);
    CHECK_FALSE(c.has("problem.mu"));
}

TEST_CASE("parse_config errors carry line numbers")
{
    try {
        parse_config("[a]\nx = 1\nbroken line\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("[a]\nx = 1\nx = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[a\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[a]\nx = \"open\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[a]\n = 3\n"), ConfigError);
}

TEST_CASE("typed getters reject bad values")
{
    Config c;
    c.set("a.x", "1.5e");
    c.set("a.n", "2.5");
    c.set("a.b", "maybe");
    c.set("a.l", "[1, x]");
    CHECK_THROWS_AS(c.get_double("a.x", 0.0), ConfigError);
    CHECK_THROWS_AS(c.get_int("a.n", 0), ConfigError);
    CHECK_THROWS_AS(c.get_bool("a.b", false), ConfigError);
    CHECK_THROWS_AS(c.get_int_list("a.l", {}), ConfigError);
    CHECK_THROWS_AS(c.raw("a.none"), ConfigError);
    CHECK(parse_int_list("4,5", "k") == std::vector<int>{4, 5});
    CHECK(parse_int_list("[7]", "k") == std::vector<int>{7});
    CHECK(parse_double("  -2.5 ", "k") == -2.5);
}

TEST_CASE("load_config_file")
{
    const char* path = "egdg_test_config.toml";
    {
        std::ofstream f(path);
        f << "[time]\nT = 0.5\n";
    }
    CHECK(load_config_file(path).get_double("time.T", 0.0) == 0.5);
    std::remove(path);
    CHECK_THROWS_AS(load_config_file("/nonexistent/egdg.toml"), ConfigError);
}
