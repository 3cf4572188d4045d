#include "fixtures.hpp"
#include "orbicover/errors.hpp"
#include "orbicover/sft_homology.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace orbicover;
using namespace orbicover::testing;

namespace {

OrbitCatalog one_form_catalog(Rational c, int form_degree = 1)
{
    ClosedForm f{"th", form_degree, {}};
    f.integrals["g"] = form_degree == 1 ? c : Rational(0);
    return OrbitCatalog(3, {elliptic("g", Rational(1, 10))}, {f}, 0, {});
}

}  // namespace

TEST_CASE("h0 without forms is zero")
{
    const auto alg = Algebra::create(pants_catalog(), Truncation{3, 4, 2});
    const auto h = hamiltonian_h0(alg);
    REQUIRE(h.element.is_zero());
    const auto cx = ch_differential(alg);
    for (const auto& col : cx.differential)
        REQUIRE(col.empty());
}

TEST_CASE("h0 for one orbit and one 1-form")
{
    const Rational c(5, 3);
    const auto alg = Algebra::create(one_form_catalog(c), Truncation{3, 4, 2});
    const auto h = hamiltonian_h0(alg);
    auto expected = alg->zero();
    for (int k = 1; k <= 3; ++k)
        expected = expected + Rational(k) * c * (alg->p({0, k}) * alg->q({0, k}) * alg->t(0));
    REQUIRE(h.element == expected);
    for (const auto& [m, coeff] : h.element.terms()) {
        const auto& entry = h.provenance.at(m);
        REQUIRE(entry.source == TermSource::OrbitCylinder);
        REQUIRE(entry.count == coeff);
    }
    bool zero_entries = false;
    for (const auto& [m, entry] : h.provenance)
        if (entry.source == TermSource::BranchedCoverZero) {
            zero_entries = true;
            REQUIRE(entry.count == 0);
            REQUIRE(h.element.terms().count(m) == 0);
        }
    REQUIRE(zero_entries);
    REQUIRE(master_equation_holds(h));
}

TEST_CASE("h0 ignores forms of other degrees")
{
    const auto alg = Algebra::create(one_form_catalog(1, 2), Truncation{3, 4, 2});
    REQUIRE(hamiltonian_h0(alg).element.is_zero());
}

TEST_CASE("contact differential on generators and products")
{
    const Rational c(2);
    const auto alg = Algebra::create(one_form_catalog(c), Truncation{3, 4, 2});
    const auto cx = ch_differential(alg);
    for (int k = 1; k <= 3; ++k) {
        const auto q = alg->q({0, k});
        const auto expected = Rational(k * k) * c * (alg->t(0) * q);
        REQUIRE(cx.apply(q) == expected);
    }
    const auto qa = alg->q({0, 1}), qb = alg->q({0, 2});
    const Rational s = alg->generator(*alg->q_id({0, 1})).odd() ? -1 : 1;
    REQUIRE(cx.apply(qa * qb) == cx.apply(qa) * qb + s * (qa * cx.apply(qb)));
    REQUIRE(differential_squares_to_zero(cx));
}

TEST_CASE("action filtration")
{
    const OrbitCatalog c(3, {elliptic("g", Rational(1, 10))}, {}, 1, {Rational(2)});
    const auto alg = Algebra::create(c, Truncation{3, 4, 2});
    const auto q = alg->q({0, 1}).terms().begin()->first;
    REQUIRE(action_filtration(q, *alg) == 1);
    const auto pq = (alg->p({0, 2}) * alg->q({0, 2})).terms().begin()->first;
    REQUIRE(action_filtration(pq, *alg) == 0);
    const auto qe = (alg->q({0, 1}) * alg->e({1})).terms().begin()->first;
    REQUIRE(action_filtration(qe, *alg) == 3);
}

TEST_CASE("filtration behavior")
{
    {
        const auto cx = ch_differential(Algebra::create(pants_catalog(), Truncation{3, 4, 2}));
        for (const auto& [m, cls] : filtration_behavior(cx))
            REQUIRE(cls == FiltrationClass::StrictlyDecreasing);
    }
    const auto alg = Algebra::create(one_form_catalog(1), Truncation{3, 4, 2});
    const auto cx = ch_differential(alg);
    for (const auto& [m, cls] : filtration_behavior(cx)) {
        REQUIRE(cls != FiltrationClass::Violating);
        if (alg->word_length(m) > 0 && alg->t_degree(m) == 0)
            REQUIRE(cls == FiltrationClass::Preserving);
    }
}

TEST_CASE("basis enumeration")
{
    const auto alg = Algebra::create(one_form_catalog(1), Truncation{2, 2, 1});
    const auto basis = q_basis(*alg);
    std::size_t count = 0;
    for (const auto& m : basis) {
        REQUIRE(alg->within_truncation(m));
        for (auto [g, e] : m.factors)
            REQUIRE(alg->generator(g).kind != GeneratorKind::P);
        ++count;
    }
    // q's have degree 0: words of length <= 2 in two letters, times {1, t}
    REQUIRE(count == 12);
}

TEST_CASE("algebraic identities on random catalogs")
{
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const auto alg = Algebra::create(random_catalog(rng), Truncation{4, 4, 2});
        const auto h = hamiltonian_h0(alg);
        REQUIRE(master_equation_holds(h));
        const auto cx = ch_differential(alg);
        REQUIRE(differential_squares_to_zero(cx));
        for (const auto& [m, c] : h.element.terms())
            REQUIRE(action_filtration(m, *alg) >= 0);
        for (const auto& g : alg->iterates())
            REQUIRE_FALSE(alg->catalog().bad(g));
        for (const auto& [m, cls] : filtration_behavior(cx))
            REQUIRE(cls != FiltrationClass::Violating);
    }
}

TEST_CASE("higher-order slot enters the differential")
{
    const auto alg = Algebra::create(one_form_catalog(1), Truncation{3, 4, 2});
    auto h = hamiltonian_h0(alg);
    REQUIRE(h.higher.is_zero());
    h.higher = alg->p({0, 2}) * alg->q({0, 1}) * alg->q({0, 1});
    const auto cx = ch_differential(alg, h);
    REQUIRE_FALSE(cx.apply(alg->q({0, 2})).is_zero());
    REQUIRE(cx.apply(alg->q({0, 2})) != ch_differential(alg).apply(alg->q({0, 2})));
}

TEST_CASE("contact differential multiplies monomials by t and their total weight")
{
    // Odd q (hyperbolic, even index) next to even q (elliptic): weights must add, not cancel.
    const OrbitCatalog c(3, {hyperbolic("a", 2), elliptic("b", Rational(1, 3))},
                         {ClosedForm{"th", 1, {{"a", Rational(1)}, {"b", Rational(3)}}}}, 0, {});
    const auto alg = Algebra::create(c, Truncation{3, 3, 1});
    REQUIRE(alg->generator(*alg->q_id({0, 1})).odd());
    REQUIRE_FALSE(alg->generator(*alg->q_id({1, 1})).odd());
    const auto cx = ch_differential(alg);
    for (int j = 0; j < static_cast<int>(cx.basis.size()); ++j) {
        const auto& m = cx.basis[j];
        if (alg->t_degree(m) > 0)
            continue;
        Rational weight = 0;
        for (auto [id, e] : m.factors) {
            const auto& g = alg->generator(id);
            weight += Rational(e) * g.orbit.multiplicity * c.integral(g.orbit, 0);
        }
        const auto x = cx.basis_element(j);
        REQUIRE(cx.apply(x) == weight * (alg->t(0) * x));
    }
}
