#include "fixtures.hpp"
#include "orbicover/catalog_io.hpp"
#include "orbicover/errors.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

using namespace orbicover;
using namespace orbicover::testing;
using Catch::Matchers::ContainsSubstring;

namespace {

const char* minimal = R"({
  "dim_v": 3,
  "h2_rank": 0,
  "omega_pairing": [],
  "orbits": [
    {"name": "g", "cz_index": 1, "period": 1, "action": "3/2", "h1_class": [1],
     "cz_model": {"type": "hyperbolic"}}
  ],
  "forms": [{"name": "th", "degree": 1, "integrals": {"g": "1/2"}}]
})";

std::string replace(std::string s, const std::string& from, const std::string& to)
{
    s.replace(s.find(from), from.size(), to);
    return s;
}

}  // namespace

TEST_CASE("minimal catalog")
{
    const auto c = parse_catalog(minimal);
    REQUIRE(c.orbits().size() == 1);
    REQUIRE(c.orbit(0).action == Rational(3, 2));
    REQUIRE(c.forms().at(0).integrals.at("g") == Rational(1, 2));
    REQUIRE(c.half_dim() == 2);
}

TEST_CASE("even dimension is rejected")
{
    REQUIRE_THROWS_AS(parse_catalog(replace(minimal, "\"dim_v\": 3", "\"dim_v\": 4")), ValidationError);
}

TEST_CASE("table outside the iteration bounds names the bounds")
{
    const auto doc = replace(minimal, R"({"type": "hyperbolic"})", R"({"type": "table", "values": [1, 9]})");
    const long lower = iterate_bounds(1, 2, 2).lower, upper = iterate_bounds(1, 2, 2).upper;
    REQUIRE_THROWS_WITH(parse_catalog(doc), ContainsSubstring("orbit g") && ContainsSubstring(std::to_string(lower)) &&
                                                ContainsSubstring(std::to_string(upper)));
}

TEST_CASE("syntax errors report line and column")
{
    const std::string broken = "{\n  \"dim_v\": 3,\n  \"orbits\": [,]\n}";
    REQUIRE_THROWS_WITH(parse_catalog(broken), ContainsSubstring("line 3, column"));
}

TEST_CASE("schema errors name the element")
{
    REQUIRE_THROWS_WITH(parse_catalog(replace(minimal, "\"degree\": 1", "\"degree\": \"one\"")),
                        ContainsSubstring("form th"));
    REQUIRE_THROWS_WITH(parse_catalog(replace(minimal, "\"cz_index\": 1,", "")), ContainsSubstring("orbit g"));
    REQUIRE_THROWS_WITH(parse_catalog(replace(minimal, "\"hyperbolic\"", "\"parabolic\"")),
                        ContainsSubstring("orbit g"));
}

TEST_CASE("round trip through a file")
{
    std::mt19937_64 rng(3);
    const auto dir = std::filesystem::temp_directory_path() / "orbicover_io_test";
    std::filesystem::create_directories(dir);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = random_catalog(rng);
        const auto path = dir / ("c" + std::to_string(trial) + ".json");
        std::ofstream(path) << serialize_catalog(c);
        const auto back = load_catalog(path);
        REQUIRE(back == c);
        REQUIRE(serialize_catalog(back) == serialize_catalog(c));
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("elliptic flag survives")
{
    auto o = elliptic("e", Rational(1, 7));
    std::get<EllipticModel>(o.cz_model).irrational_approximant = true;
    const auto c = single_orbit(o);
    REQUIRE(parse_catalog(serialize_catalog(c)) == c);
    REQUIRE_THAT(serialize_catalog(c), ContainsSubstring("irrational_approximant"));
}

TEST_CASE("missing file")
{
    REQUIRE_THROWS_AS(load_catalog("/nonexistent/catalog.json"), ValidationError);
}
