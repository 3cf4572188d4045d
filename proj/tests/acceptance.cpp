// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any criterion fails.
#include "dense_oracle.hpp"
#include "fixtures.hpp"
#include "strata_oracle.hpp"

#include "orbicover/cover_moduli.hpp"
#include "orbicover/euler_certificate.hpp"
#include "orbicover/level_strata.hpp"
#include "orbicover/meromorphic.hpp"
#include "orbicover/sft_homology.hpp"
#include "orbicover/spectral_sequence.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace orbicover;
using namespace orbicover::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void criterion(const std::string& name, double limit_seconds, const std::function<Outcome()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_seconds > 0 && secs > limit_seconds) {
        out.ok = false;
        out.detail += " (time limit " + std::to_string(limit_seconds) + " s exceeded)";
    }
    if (!out.ok)
        ++failures;
    std::ostringstream line;
    line.precision(3);
    line << (out.ok ? "PASS" : "FAIL") << "  " << name << "  [" << std::fixed << secs << " s]";
    if (!out.detail.empty())
        line << "  " << out.detail;
    std::cout << line.str() << std::endl;
}

std::vector<std::vector<int>> multisets(int size, int max_value)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int lo) {
        if (static_cast<int>(cur.size()) == size) {
            out.push_back(cur);
            return;
        }
        for (int v = lo; v <= max_value; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

// Balanced profiles with 3 <= n <= max_n; positives and negatives as nonincreasing lists.
std::vector<MultiplicityProfile> balanced_profiles(int max_n, int max_mult)
{
    std::vector<MultiplicityProfile> out;
    for (int n = 3; n <= max_n; ++n)
        for (int a = 1; a < n; ++a) {
            const auto tops = multisets(a, max_mult), bottoms = multisets(n - a, max_mult);
            for (auto top : tops)
                for (auto bottom : bottoms) {
                    long st = 0, sb = 0;
                    for (int v : top)
                        st += v;
                    for (int v : bottom)
                        sb += v;
                    if (st != sb)
                        continue;
                    std::reverse(top.begin(), top.end());
                    std::reverse(bottom.begin(), bottom.end());
                    out.emplace_back(top, bottom);
                }
        }
    return out;
}

struct Model {
    std::string name;
    OrbitCatalog catalog;
};

std::vector<Model> sweep_models()
{
    std::vector<Model> out;
    for (int dim : {3, 5}) {
        const int blocks = (dim + 1) / 2 - 1;
        for (int mu : {-2, -1, 0, 1, 2, 3})
            out.push_back({"dim " + std::to_string(dim) + " hyperbolic mu=" + std::to_string(mu),
                           single_orbit(hyperbolic("g", mu * blocks), dim)});
        for (const Rational rho : {Rational(1, 7), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(9, 10)})
            out.push_back({"dim " + std::to_string(dim) + " elliptic rho=" + to_string(rho),
                           single_orbit(elliptic("g", rho), dim)});
    }
    const std::vector<std::pair<std::vector<Rational>, std::vector<int>>> tables{
        {{Rational(1, 3), Rational(3, 5)}, {}}, {{Rational(1, 4)}, {2}}, {{}, {1, 1}},
        {{}, {-1, 2}},                          {{Rational(2, 7)}, {-1}}, {{Rational(1, 2), Rational(1, 2)}, {}}};
    for (const auto& [rot, hyp] : tables) {
        // Long enough for every edge multiplicity that appears in a boundary stratum.
        const auto values = block_sum_table(rot, hyp, 40);
        std::string name = "dim 5 table";
        for (int k = 0; k < 4; ++k)
            name += " " + std::to_string(values[k]);
        name += " ...";
        out.push_back({name, single_orbit(table("g", values), 5)});
    }
    return out;
}

Outcome pants_index()
{
    const auto c = pants_catalog();
    const long a = fredholm_index(MultiplicityProfile::parse("2;1,1"), c);
    const long b = fredholm_index(MultiplicityProfile::parse("1,1;2"), c);
    return {a == 1 && b == 1, "ind(2;1,1)=" + std::to_string(a) + " ind(1,1;2)=" + std::to_string(b)};
}

Outcome cylinder_count()
{
    std::string detail;
    bool ok = true;
    for (int m = 1; m <= 6; ++m) {
        const auto d = moduli_dimension(MultiplicityProfile({m}, {m}));
        ok = ok && d.point_count == m * m;
        detail += std::to_string(d.point_count) + (m < 6 ? "," : "");
    }
    return {ok, "counts " + detail};
}

Outcome index_sweep(const std::vector<Model>& models, const std::vector<MultiplicityProfile>& profiles)
{
    std::size_t checked = 0;
    for (const auto& model : models) {
        const long m = model.catalog.half_dim();
        for (const auto& p : profiles) {
            const long n = p.punctures();
            const long ind = fredholm_index(p, model.catalog);
            ++checked;
            if (ind < (2 - n) * (2 * m - 4) || ind > 2 * n - 4)
                return {false, model.name + ", " + p.to_string() + ": index " + std::to_string(ind)};
        }
    }
    return {true, std::to_string(checked) + " (model, profile) pairs"};
}

Outcome rank_parity(const std::vector<Model>& models, const std::vector<MultiplicityProfile>& profiles)
{
    std::size_t checked = 0;
    for (const auto& model : models)
        for (const auto& p : profiles) {
            if (fredholm_index(p, model.catalog) != 1)
                continue;
            const long r = cokernel_rank(p, model.catalog);
            ++checked;
            if (r != 2 * (p.punctures() - 3) + 1 || r % 2 == 0)
                return {false, model.name + ", " + p.to_string() + ": rank " + std::to_string(r)};
        }
    return {checked > 0, std::to_string(checked) + " index-1 profiles"};
}

Outcome euler_certificates(const std::vector<Model>& models)
{
    const auto profiles = balanced_profiles(7, 5);
    std::size_t checked = 0, certificates = 0;
    for (const auto& model : models) {
        CertificateStore store(model.catalog);
        for (const auto& p : profiles) {
            if (fredholm_index(p, model.catalog) != 1)
                continue;
            const auto r = store.euler_number(p);
            ++checked;
            if (r.value != 0)
                return {false, model.name + ", " + p.to_string() + ": value " + to_string(r.value)};
            const auto check = verify_certificate(r.bundle, model.catalog);
            if (!check.ok)
                return {false, model.name + ", " + p.to_string() + ": " + check.node + ": " + check.reason};
        }
        certificates += store.size();
    }
    return {checked > 0,
            std::to_string(checked) + " index-1 profiles, " + std::to_string(certificates) + " certificates"};
}

Outcome boundary_oracle()
{
    const auto pants = enumerate_codim1(MultiplicityProfile::parse("2;1,1"));
    if (!pants.empty())
        return {false, "(2;1,1) has " + std::to_string(pants.size()) + " strata"};
    const auto p = MultiplicityProfile::parse("3;1,1,1");
    std::set<std::string> expected, got;
    for (const auto& o : brute_force_codim1(p))
        expected.insert(canonical_form(o.tree, derive_edge_multiplicities(o.tree, p)));
    for (const auto& s : enumerate_codim1(p))
        got.insert(s.canonical);
    return {expected == got && !got.empty(), "(3;1,1,1): " + std::to_string(got.size()) + " strata, oracle " +
                                                 std::to_string(expected.size())};
}

std::vector<int> random_partition(std::mt19937_64& rng, int total, int max_parts)
{
    std::vector<int> parts;
    while (total > 0) {
        const int k = static_cast<int>(parts.size()) + 1 == max_parts
                          ? total
                          : std::uniform_int_distribution<int>(1, total)(rng);
        parts.push_back(k);
        total -= k;
    }
    std::sort(parts.rbegin(), parts.rend());
    return parts;
}

Outcome meromorphic()
{
    std::mt19937_64 rng(2024);
    double worst = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int degree = std::uniform_int_distribution<int>(2, 8)(rng);
        auto top = random_partition(rng, degree, 4), bottom = random_partition(rng, degree, 4);
        if (top.size() + bottom.size() < 3)
            bottom = random_partition(rng, degree, 1).size() == 1 ? std::vector<int>{degree - 1, 1} : bottom;
        const MultiplicityProfile p(top, bottom);
        const auto cover = realize_profile(p, rng);
        for (const auto& r : verify_multiplicities(cover)) {
            worst = std::max(worst, r.result.residue);
            if (r.result.winding != r.expected || r.result.residue >= 1e-6)
                return {false, p.to_string() + " puncture " + r.label + ": winding " +
                                   std::to_string(r.result.winding) + " residue " + std::to_string(r.result.residue)};
        }
    }
    double worst_neck = 0;
    for (int m : {-5, -4, -3, -2, -1, 1, 2, 3, 4, 5})
        for (double r : {0.25, 1.0, 4.0}) {
            const auto s = neck_shift_check(m, r);
            const double err = std::abs(s.measured - 2.0 * m * r);
            worst_neck = std::max(worst_neck, err);
            if (err >= 1e-6 || s.expected != 2.0 * m * r)
                return {false, "neck m=" + std::to_string(m) + " r=" + std::to_string(r)};
        }
    std::ostringstream d;
    d << "max winding residue " << worst << ", max neck error " << worst_neck;
    return {true, d.str()};
}

Outcome identities()
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto alg = Algebra::create(random_catalog(rng, 3, 2), Truncation{4, 4, 2});
        const auto cx = ch_differential(alg);
        if (!master_equation_holds(cx.hamiltonian))
            return {false, "{h0,h0} != 0 on catalog " + std::to_string(trial)};
        if (!differential_squares_to_zero(cx))
            return {false, "d0^2 != 0 on catalog " + std::to_string(trial)};
    }
    return {true, "20 random catalogs"};
}

Outcome filtration()
{
    const auto empty = ch_differential(Algebra::create(pants_catalog(), Truncation{3, 4, 2}));
    for (const auto& col : empty.differential)
        if (!col.empty())
            return {false, "nonzero differential without forms"};
    const auto alg = Algebra::create(two_orbit_catalog(), Truncation{3, 3, 2});
    const auto cx = ch_differential(alg);
    std::size_t terms = 0;
    for (std::size_t j = 0; j < cx.basis.size(); ++j)
        for (const auto& [i, v] : cx.differential[j]) {
            ++terms;
            if (action_filtration(cx.basis[i], *alg) != action_filtration(cx.basis[j], *alg))
                return {false, "term changes the filtration level"};
        }
    for (const auto& [m, cls] : filtration_behavior(cx))
        if (cls == FiltrationClass::Violating)
            return {false, "filtration raised"};
    return {terms > 0, std::to_string(empty.basis.size()) + " zero columns; " + std::to_string(terms) +
                           " terms at equal level"};
}

std::map<BlockKey, std::size_t> nonzero(const SpectralPage& page)
{
    std::map<BlockKey, std::size_t> out;
    for (const auto& [k, b] : page.blocks)
        if (b.dimension > 0)
            out[k] = b.dimension;
    return out;
}

std::map<BlockKey, std::size_t> nonzero(const std::map<BlockKey, std::size_t>& m)
{
    std::map<BlockKey, std::size_t> out;
    for (const auto& [k, d] : m)
        if (d > 0)
            out[k] = d;
    return out;
}

Outcome e2_two_orbit()
{
    const auto alg = Algebra::create(two_orbit_catalog(), Truncation{3, 3, 2});
    const auto cx = ch_differential(alg);
    const auto e2 = nonzero(e2_page(cx, false));
    const auto oracle = dense_homology(cx);
    const auto predicted = nonzero(predicted_free_algebra(cx));
    std::size_t total = 0;
    for (const auto& [k, d] : e2)
        total += d;
    const bool ok = e2 == oracle && e2 == predicted;
    return {ok, std::to_string(e2.size()) + " nonzero blocks, total dimension " + std::to_string(total) +
                    (ok ? "" : "; computed/oracle/predicted disagree")};
}

Outcome vanishing()
{
    std::vector<SimpleOrbit> orbits{hyperbolic("a", 2, 1), elliptic("b", Rational(1, 3), 2), hyperbolic("c", 1, 3)};
    orbits[1].period = 2;
    orbits[2].period = 3;
    const OrbitCatalog catalog(
        3, orbits, {ClosedForm{"dt", 1, {{"a", Rational(1)}, {"b", Rational(2)}, {"c", Rational(3)}}}}, 0, {});
    const auto alg = Algebra::create(catalog, Truncation{4, 3, 2});
    if (!vanishing_check(*alg))
        return {false, "vanishing_check is false"};
    const auto cx = ch_differential(alg);
    const auto page = e2_page(cx);
    std::size_t total = 0;
    for (const auto& [k, b] : page.blocks) {
        total += b.dimension;
        for (const auto& rep : b.representatives)
            for (const auto& [i, v] : rep)
                if (alg->word_length(cx.basis[i]) != 0)
                    return {false, "class involving q: " + alg->render(cx.basis[i])};
    }
    return {nonzero(page) == dense_homology(cx), "E2 spanned by " + std::to_string(total) + " t-monomials"};
}

}  // namespace

int main()
{
    const auto models = sweep_models();
    const auto profiles = balanced_profiles(8, 6);
    criterion("pair-of-pants index", 0.001, pants_index);
    criterion("cylinder count m^2", 0, cylinder_count);
    criterion("index-range sweep", 5, [&] { return index_sweep(models, profiles); });
    criterion("rank parity", 0, [&] { return rank_parity(models, profiles); });
    criterion("Euler certificates", 30, [&] { return euler_certificates(models); });
    criterion("boundary enumeration oracle", 5, boundary_oracle);
    criterion("meromorphic windings and neck shifts", 2, meromorphic);
    criterion("master equation and d0^2 = 0", 10, identities);
    criterion("action filtration", 0, filtration);
    criterion("E2 page of the two-orbit catalog", 10, e2_two_orbit);
    criterion("vanishing for a mapping-torus catalog", 0, vanishing);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
