#include "fixtures.hpp"
#include "orbicover/errors.hpp"
#include "orbicover/euler_certificate.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace orbicover;
using namespace orbicover::testing;

namespace {

MultiplicityProfile P(const char* s) { return MultiplicityProfile::parse(s); }

OrbitCatalog table_catalog() { return single_orbit(table("t", {1, 2, 2, 3, 4, 5})); }

}  // namespace

TEST_CASE("pair of pants closes by parity alone")
{
    const auto r = euler_number(P("2;1,1"), pants_catalog());
    REQUIRE(r.value == 0);
    REQUIRE(r.bundle.root == "2;1,1");
    const auto& c = r.bundle.certificates.at("2;1,1");
    REQUIRE(c.rank == 1);
    REQUIRE(c.parity_odd);
    REQUIRE(c.boundary.empty());
    REQUIRE(verify_certificate(r.bundle, pants_catalog()).ok);
}

TEST_CASE("four punctures cite sub-certificates")
{
    const auto c = table_catalog();
    const auto r = euler_number(P("3;1,1,1"), c);
    REQUIRE(r.value == 0);
    const auto& root = r.bundle.certificates.at("3;1,1,1");
    REQUIRE(root.rank == 3);
    REQUIRE_FALSE(root.boundary.empty());
    bool cites = false;
    for (const auto& bc : root.boundary) {
        REQUIRE(bc.level_indices.size() == 2);
        REQUIRE(bc.level_indices[0] + bc.level_indices[1] == 1);
        if (const auto* ind = std::get_if<Induction>(&bc.disposition)) {
            cites = true;
            REQUIRE(r.bundle.certificates.count(ind->profile) == 1);
            REQUIRE(P(ind->profile.c_str()).punctures() < 4);
        } else {
            REQUIRE(std::get<DimMismatch>(bc.disposition).index != 1);
        }
    }
    REQUIRE(cites);
    REQUIRE(verify_certificate(r.bundle, c).ok);
}

TEST_CASE("index other than one is rejected")
{
    REQUIRE_THROWS_AS(euler_number(P("1;1"), pants_catalog()), PreconditionError);
    REQUIRE_THROWS_AS(euler_number(P("2;1,1"), single_orbit(elliptic("e", Rational(3, 10)))), PreconditionError);
    REQUIRE_THROWS_AS(euler_number(P("3;1,1"), pants_catalog()), PreconditionError);
}

TEST_CASE("contributions vanish")
{
    REQUIRE(contribution(P("2;1,1"), pants_catalog()) == 0);
    REQUIRE(contribution(P("1;1"), pants_catalog()) == 0);
    REQUIRE(contribution(P("2,2;1,3"), single_orbit(hyperbolic("g", 2))) == 0);
    REQUIRE(contribution(P("3;1,1,1"), table_catalog()) == 0);
    REQUIRE_THROWS_AS(contribution(P("3;1,1"), pants_catalog()), PreconditionError);
}

TEST_CASE("tampered certificates are rejected at the right node")
{
    const auto c = table_catalog();
    const auto r = euler_number(P("3;1,1,1"), c);

    auto even = r.bundle;
    even.certificates.at("3;1,1,1").rank = 2;
    auto check = verify_certificate(even, c);
    REQUIRE_FALSE(check.ok);
    REQUIRE(check.node == "3;1,1,1/parity");

    auto dangling = r.bundle;
    dangling.certificates.erase("2;1,1");
    check = verify_certificate(dangling, c);
    REQUIRE_FALSE(check.ok);
    REQUIRE(check.node.rfind("3;1,1,1/boundary[", 0) == 0);
    REQUIRE(check.reason.find("dangling") != std::string::npos);

    auto dropped = r.bundle;
    dropped.certificates.at("3;1,1,1").boundary.pop_back();
    check = verify_certificate(dropped, c);
    REQUIRE_FALSE(check.ok);
    REQUIRE(check.node == "3;1,1,1");

    auto wrong_index = r.bundle;
    wrong_index.certificates.at("3;1,1,1").boundary.front().level_indices = {0, 1};
    REQUIRE_FALSE(verify_certificate(wrong_index, c).ok);

    auto fake_mismatch = r.bundle;
    fake_mismatch.certificates.at("3;1,1,1").boundary.front().disposition = DimMismatch{"level 1", 1};
    REQUIRE_FALSE(verify_certificate(fake_mismatch, c).ok);

    auto bad_stratum = r.bundle;
    bad_stratum.certificates.at("3;1,1,1").boundary.front().stratum = "v=[L1(+1,-1,-2,-3)] e=[]";
    REQUIRE_FALSE(verify_certificate(bad_stratum, c).ok);

    auto conclusion = r.bundle;
    conclusion.certificates.at("2;1,1").conclusion = 1;
    REQUIRE_FALSE(verify_certificate(conclusion, c).ok);

    REQUIRE_FALSE(verify_certificate(r.bundle, pants_catalog()).ok);
}

TEST_CASE("certificates round-trip through JSON")
{
    const auto c = table_catalog();
    const auto r = euler_number(P("3;1,1,1"), c);
    const auto text = certificate_to_json(r.bundle);
    const auto back = certificate_from_json(text);
    REQUIRE(back == r.bundle);
    REQUIRE(certificate_to_json(back) == text);
    REQUIRE(verify_certificate(back, c).ok);
    REQUIRE_THROWS_AS(certificate_from_json("{"), ValidationError);
    REQUIRE_THROWS_AS(certificate_from_json("{\"root\": 1}"), ValidationError);
}

TEST_CASE("memoized store reuses certificates")
{
    const auto c = table_catalog();
    CertificateStore store(c);
    store.euler_number(P("3;1,1,1"));
    const auto before = store.size();
    store.euler_number(P("2;1,1"));
    REQUIRE(store.size() == before);
}
