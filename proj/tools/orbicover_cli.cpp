#include "orbicover/catalog_io.hpp"
#include "orbicover/cover_moduli.hpp"
#include "orbicover/errors.hpp"
#include "orbicover/euler_certificate.hpp"
#include "orbicover/level_strata.hpp"
#include "orbicover/meromorphic.hpp"
#include "orbicover/sft_homology.hpp"
#include "orbicover/spectral_sequence.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace orbicover;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitUsage = 64;

OrbitCatalog default_catalog()
{
    return OrbitCatalog(3, {SimpleOrbit{"γ", 1, Rational(1), Rational(1), {}, HyperbolicModel{}}}, {}, 0, {});
}

OrbitCatalog catalog_from(const std::string& path)
{
    return path.empty() ? default_catalog() : load_catalog(path);
}

MultiplicityProfile profile_from(const std::string& text, const std::string& orbit, const OrbitCatalog& catalog)
{
    const std::size_t index = orbit.empty() ? 0 : catalog.orbit_index(orbit);
    return MultiplicityProfile::parse(text, index);
}

Truncation truncation_from(const std::string& max_period, int max_word, int max_t)
{
    Truncation t;
    if (const char* env = std::getenv("SFT_TRUNCATION_DEFAULTS"))
        t = parse_truncation(env, t);
    if (!max_period.empty())
        t.max_action = parse_rational(max_period);
    if (max_word >= 0)
        t.max_word = max_word;
    if (max_t >= 0)
        t.max_t_degree = max_t;
    return t;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_index(const std::string& catalog_path, const std::string& profile_text, const std::string& orbit)
{
    const auto catalog = catalog_from(catalog_path);
    const auto s = summarize(profile_from(profile_text, orbit, catalog), catalog);
    std::cout << s.fredholm_index << '\t' << s.actual_dim_quotient << '\t' << s.cokernel_rank << '\t'
              << (s.regular ? "true" : "false") << '\n';
    return 0;
}

int run_strata(const std::string& profile_text)
{
    const auto profile = MultiplicityProfile::parse(profile_text);
    for (const auto& s : enumerate_codim1(profile))
        std::cout << s.canonical << '\t' << s.codim << '\t' << s.fiber_group_order << '\n';
    return 0;
}

int run_euler(const std::string& catalog_path, const std::string& profile_text, const std::string& orbit,
              const std::string& out, const std::string& verify)
{
    const auto catalog = catalog_from(catalog_path);
    if (!verify.empty()) {
        const auto check = verify_certificate(certificate_from_json(read_file(verify)), catalog);
        if (check.ok) {
            std::cout << "ok\n";
            return 0;
        }
        std::cout << "fail\t" << check.node << '\t' << check.reason << '\n';
        return kExitValidation;
    }
    if (profile_text.empty())
        throw ValidationError("euler needs --profile or --verify");
    const auto result = euler_number(profile_from(profile_text, orbit, catalog), catalog);
    std::ofstream file(out, std::ios::binary);
    if (!file)
        throw ValidationError("cannot write " + out);
    file << certificate_to_json(result.bundle) << '\n';
    std::cout << result.value << '\n' << out << '\n';
    return 0;
}

int run_hamiltonian(const std::string& catalog_path, const Truncation& t)
{
    const auto alg = Algebra::create(catalog_from(catalog_path), t);
    std::cout << hamiltonian_h0(alg).element.render() << '\n';
    return 0;
}

int run_e2(const std::string& catalog_path, const Truncation& t)
{
    const auto alg = Algebra::create(catalog_from(catalog_path), t);
    const auto complex = ch_differential(alg);
    const auto e1 = e1_page(complex);
    const auto e2 = e2_page(complex, false);
    const auto predicted = predicted_free_algebra(complex);
    const auto mismatches = compare_with_free_algebra(complex, e2);

    std::cout << "# surviving generators\n";
    for (const auto& g : surviving_generators(*alg))
        std::cout << alg->render(*alg->q_id(g)) << '\n';
    std::cout << "# level\tdegree\tt_degree\tE1\tE2\tpredicted\tclean\n";
    for (const auto& [key, block] : e1.blocks) {
        auto e2_it = e2.blocks.find(key);
        auto p_it = predicted.find(key);
        std::cout << to_string(key.level) << '\t' << key.degree << '\t' << key.t_degree << '\t' << block.dimension
                  << '\t' << (e2_it == e2.blocks.end() ? 0 : e2_it->second.dimension) << '\t'
                  << (p_it == predicted.end() ? 0 : p_it->second) << '\t' << (block.truncation_clean ? "yes" : "no")
                  << '\n';
    }
    if (!mismatches.empty()) {
        std::cerr << "E2 differs from the predicted free algebra in " << mismatches.size() << " block(s)\n";
        return kExitInvariant;
    }
    return 0;
}

int run_verify_covers(const std::string& profile_text, std::uint64_t seed, int samples)
{
    const auto profile = MultiplicityProfile::parse(profile_text);
    std::mt19937_64 rng(seed);
    const auto cover = realize_profile(profile, rng);
    bool all_ok = true;
    std::cout << "# puncture\texpected\tmeasured\tresidue\tok\n";
    for (const auto& r : verify_multiplicities(cover, samples)) {
        const bool ok = r.result.winding == r.expected && r.result.residue < 1e-6;
        all_ok = all_ok && ok;
        std::cout << r.label << '\t' << r.expected << '\t' << std::setprecision(12) << r.result.measured << '\t'
                  << std::scientific << std::setprecision(3) << r.result.residue << std::defaultfloat << '\t'
                  << (ok ? "yes" : "no") << '\n';
    }
    return all_ok ? 0 : kExitInvariant;
}

int run_check(const std::string& catalog_path, const Truncation& t)
{
    const auto alg = Algebra::create(catalog_from(catalog_path), t);
    const auto complex = ch_differential(alg);
    bool ok = true;
    auto report = [&](const std::string& name, bool pass) {
        ok = ok && pass;
        std::cout << (pass ? "PASS" : "FAIL") << '\t' << name << '\n';
    };
    report("{h0,h0} = 0", master_equation_holds(complex.hamiltonian));
    report("d0^2 = 0", differential_squares_to_zero(complex));
    std::map<FiltrationClass, std::size_t> counts;
    for (const auto& [m, c] : filtration_behavior(complex))
        ++counts[c];
    report("no term of d0 raises the filtration", counts[FiltrationClass::Violating] == 0);
    bool bad_generators = false;
    for (const auto& g : alg->iterates())
        bad_generators = bad_generators || alg->catalog().bad(g);
    report("bad orbits are not generators", !bad_generators);
    std::cout << "filtration\tstrictly-decreasing=" << counts[FiltrationClass::StrictlyDecreasing]
              << "\tpreserving=" << counts[FiltrationClass::Preserving]
              << "\tviolating=" << counts[FiltrationClass::Violating] << '\n';
    return ok ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Index arithmetic, boundary strata, Euler certificates and contact-homology pages for orbit curves"};
    app.require_subcommand(1);

    std::string catalog, profile, orbit, out = "euler-certificate.json", verify, max_period;
    int max_word = -1, max_t = -1, samples = 256;
    std::uint64_t seed = 1;

    auto* index = app.add_subcommand("index", "Fredholm index, dimension, cokernel rank and regularity of a profile");
    index->add_option("--catalog", catalog, "catalog JSON (default: one hyperbolic orbit in dimension 3)");
    index->add_option("--profile", profile, "multiplicities \"m+,...;m-,...\"")->required();
    index->add_option("--orbit", orbit, "orbit name (default: first orbit)");

    auto* strata = app.add_subcommand("strata", "Codimension-one boundary strata of a profile");
    strata->add_option("--profile", profile, "multiplicities \"m+,...;m-,...\"")->required();

    auto* euler = app.add_subcommand("euler", "Euler number with a certificate, or verify a certificate");
    euler->add_option("--catalog", catalog, "catalog JSON");
    euler->add_option("--profile", profile, "multiplicities \"m+,...;m-,...\"");
    euler->add_option("--orbit", orbit, "orbit name (default: first orbit)");
    euler->add_option("--out", out, "where to write the certificate");
    euler->add_option("--verify", verify, "certificate JSON to re-check");

    auto add_truncation = [&](CLI::App* cmd) {
        cmd->add_option("--catalog", catalog, "catalog JSON");
        cmd->add_option("--max-period", max_period, "action bound T");
        cmd->add_option("--max-word-len", max_word, "word length bound W");
        cmd->add_option("--max-t-degree", max_t, "t-degree bound K");
    };
    auto* hamiltonian = app.add_subcommand("hamiltonian", "Print h0");
    add_truncation(hamiltonian);
    auto* e2 = app.add_subcommand("e2", "Surviving generators and block dimensions of E1/E2 as TSV");
    add_truncation(e2);
    auto* check = app.add_subcommand("check", "Run {h0,h0}=0, d0^2=0 and the filtration classification");
    add_truncation(check);

    auto* covers = app.add_subcommand("verify-covers", "Realize a profile by a rational function and measure windings");
    covers->add_option("--profile", profile, "multiplicities \"m+,...;m-,...\"")->required();
    covers->add_option("--seed", seed, "random seed");
    covers->add_option("--samples", samples, "samples per contour");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kExitUsage;
    }

    try {
        if (*index)
            return run_index(catalog, profile, orbit);
        if (*strata)
            return run_strata(profile);
        if (*euler)
            return run_euler(catalog, profile, orbit, out, verify);
        const auto t = truncation_from(max_period, max_word, max_t);
        if (*hamiltonian)
            return run_hamiltonian(catalog, t);
        if (*e2)
            return run_e2(catalog, t);
        if (*check)
            return run_check(catalog, t);
        if (*covers)
            return run_verify_covers(profile, seed, samples);
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}
