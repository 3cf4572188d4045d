#include "orbicover/euler_certificate.hpp"

#include "orbicover/errors.hpp"

#include <json.hpp>

#include <mutex>
#include <set>

namespace orbicover {

namespace {

using json = nlohmann::json;

std::vector<long> component_indices(const StratumSummary& s, const OrbitCatalog& catalog)
{
    std::vector<long> out;
    for (const auto& p : s.component_profiles)
        out.push_back(fredholm_index(p, catalog));
    return out;
}

BoundaryCase dispose(const StratumSummary& s, const OrbitCatalog& catalog, long total_index)
{
    const auto idx = component_indices(s, catalog);
    BoundaryCase bc;
    bc.stratum = s.canonical;
    bc.level_indices.assign(s.level_count, 0);
    for (int v = 0; v < s.tree.vertex_count; ++v)
        bc.level_indices[s.tree.levels[v] - 1] += idx[v];
    long sum = 0;
    for (long i : bc.level_indices)
        sum += i;
    if (sum != total_index)
        throw InvariantViolation("index is not additive over the stratum " + s.canonical);

    int level = 0;
    for (int l = 1; l <= s.level_count; ++l)
        if (bc.level_indices[l - 1] == 1) {
            level = l;
            break;
        }
    if (level == 0) {
        bc.disposition = DimMismatch{"level 1", bc.level_indices[0]};
        return bc;
    }
    std::vector<int> noncyl;
    for (int v : s.vertices_on_level(level))
        if (!s.is_cylindrical(v))
            noncyl.push_back(v);
    if (noncyl.size() == 1 && idx[noncyl[0]] == 1) {
        bc.disposition = Induction{noncyl[0], s.component_profiles[noncyl[0]].to_string()};
        return bc;
    }
    for (int v : s.vertices_on_level(level))
        if (idx[v] != 1) {
            bc.disposition = DimMismatch{"vertex " + std::to_string(v), idx[v]};
            return bc;
        }
    throw InvariantViolation("no disposition for stratum " + s.canonical);
}

void collect(const std::map<std::pair<std::size_t, std::string>, EulerCertificate>& memo, std::size_t orbit,
             const std::string& key, CertificateBundle& bundle)
{
    if (bundle.certificates.count(key))
        return;
    const auto& cert = memo.at({orbit, key});
    bundle.certificates.emplace(key, cert);
    for (const auto& bc : cert.boundary)
        if (const auto* ind = std::get_if<Induction>(&bc.disposition))
            collect(memo, orbit, ind->profile, bundle);
}

}  // namespace

const EulerCertificate& CertificateStore::certify(const MultiplicityProfile& profile)
{
    const auto key = std::pair{profile.orbit(), profile.to_string()};
    {
        std::shared_lock lock(mutex_);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
    }
    if (!balanced(profile))
        throw PreconditionError("euler_number requires a balanced profile, got " + profile.to_string());
    const long index = fredholm_index(profile, catalog_);
    if (index != 1)
        throw PreconditionError("euler_number requires Fredholm index 1, got " + std::to_string(index) + " for " +
                                profile.to_string());

    EulerCertificate cert;
    cert.profile = key.second;
    cert.punctures = profile.punctures();
    cert.fredholm_index = index;
    cert.kernel_dimension = kernel_dimension(profile);
    cert.rank = cokernel_rank(profile, catalog_);
    cert.parity_odd = cert.rank % 2 == 1;
    if (!cert.parity_odd)
        throw InvariantViolation("even cokernel rank " + std::to_string(cert.rank) + " for " + cert.profile);

    for (const auto& s : enumerate_codim1(profile)) {
        auto bc = dispose(s, catalog_, index);
        if (const auto* ind = std::get_if<Induction>(&bc.disposition)) {
            const auto& sub = s.component_profiles[ind->vertex];
            if (sub.punctures() >= profile.punctures())
                throw InvariantViolation("induction does not decrease the puncture count at " + s.canonical);
            certify(sub);
        }
        cert.boundary.push_back(std::move(bc));
    }

    std::unique_lock lock(mutex_);
    return memo_.emplace(key, std::move(cert)).first->second;
}

EulerResult CertificateStore::euler_number(const MultiplicityProfile& profile)
{
    const auto& root = certify(profile);
    EulerResult result;
    result.value = root.conclusion;
    result.bundle.orbit = profile.orbit();
    result.bundle.root = root.profile;
    std::shared_lock lock(mutex_);
    collect(memo_, profile.orbit(), root.profile, result.bundle);
    return result;
}

std::size_t CertificateStore::size() const
{
    std::shared_lock lock(mutex_);
    return memo_.size();
}

EulerResult euler_number(const MultiplicityProfile& profile, const OrbitCatalog& catalog)
{
    CertificateStore store(catalog);
    return store.euler_number(profile);
}

Rational contribution(const MultiplicityProfile& profile, const OrbitCatalog& catalog)
{
    if (!balanced(profile))
        throw PreconditionError("contribution requires a balanced profile, got " + profile.to_string());
    if (profile.punctures() >= 3 && fredholm_index(profile, catalog) == 1)
        return Rational(euler_number(profile, catalog).value);
    return Rational(0);
}

CertificateCheck verify_certificate(const CertificateBundle& bundle, const OrbitCatalog& catalog)
{
    auto fail = [](std::string node, std::string reason) { return CertificateCheck{false, std::move(node), std::move(reason)}; };
    if (!bundle.certificates.count(bundle.root))
        return fail(bundle.root, "root certificate missing");
    if (bundle.orbit >= catalog.orbits().size())
        return fail(bundle.root, "orbit index outside the catalog");

    for (const auto& [key, cert] : bundle.certificates) {
        MultiplicityProfile profile;
        try {
            profile = MultiplicityProfile::parse(key, bundle.orbit);
        } catch (const ValidationError& e) {
            return fail(key, e.what());
        }
        if (cert.profile != key || profile.to_string() != key)
            return fail(key, "profile text does not match its key");
        if (!balanced(profile))
            return fail(key, "profile is not balanced");
        if (cert.punctures != profile.punctures())
            return fail(key, "puncture count is wrong");
        if (cert.punctures < 3)
            return fail(key, "certificates need at least three punctures");

        if (cert.rank % 2 == 0 || !cert.parity_odd)
            return fail(key + "/parity", "cokernel rank " + std::to_string(cert.rank) + " is not odd");
        const long index = fredholm_index(profile, catalog);
        if (cert.fredholm_index != index || index != 1)
            return fail(key + "/index", "Fredholm index is " + std::to_string(index) + ", certificate claims " +
                                            std::to_string(cert.fredholm_index));
        const long kernel = 2 + 2L * (cert.punctures - 3);
        if (cert.kernel_dimension != kernel)
            return fail(key + "/rank", "kernel dimension should be " + std::to_string(kernel));
        if (cert.rank != kernel - index)
            return fail(key + "/rank", "rank should be " + std::to_string(kernel - index));
        if (cert.conclusion != 0)
            return fail(key, "conclusion is not 0");

        std::set<std::string> expected;
        for (const auto& s : enumerate_codim1(profile))
            expected.insert(s.canonical);
        std::set<std::string> listed;

        for (std::size_t i = 0; i < cert.boundary.size(); ++i) {
            const auto& bc = cert.boundary[i];
            const std::string node = key + "/boundary[" + std::to_string(i) + "]";
            if (!listed.insert(bc.stratum).second)
                return fail(node, "stratum listed twice");

            StratumSummary s;
            try {
                const auto parsed = parse_canonical(bc.stratum);
                const auto check = validate_stratum(parsed.tree, profile);
                if (!check.valid)
                    return fail(node, "invalid stratum: " + check.violations.front());
                s = summarize_stratum(parsed.tree, profile);
                for (std::size_t e = 0; e < parsed.tree.edges.size(); ++e)
                    if (std::abs(s.edge_mult.at(parsed.tree.edges[e])) != parsed.edge_abs_mult[e])
                        return fail(node, "edge multiplicity does not solve the balance condition");
            } catch (const std::exception& e) {
                return fail(node, e.what());
            }
            if (s.codim != 1 || s.level_count != 2 || s.node_count != 0)
                return fail(node, "stratum is not of codimension one");

            std::vector<long> idx;
            std::vector<long> levels(2, 0);
            for (int v = 0; v < s.tree.vertex_count; ++v) {
                idx.push_back(fredholm_index(s.component_profiles[v], catalog));
                levels[s.tree.levels[v] - 1] += idx.back();
            }
            if (bc.level_indices != levels)
                return fail(node, "level indices are wrong");
            if (levels[0] + levels[1] != index)
                return fail(node, "level indices do not add up to the total index");

            if (const auto* dm = std::get_if<DimMismatch>(&bc.disposition)) {
                long actual = 0;
                if (dm->factor.rfind("level ", 0) == 0) {
                    const int l = std::atoi(dm->factor.c_str() + 6);
                    if (l < 1 || l > 2)
                        return fail(node, "no such level");
                    actual = levels[l - 1];
                } else if (dm->factor.rfind("vertex ", 0) == 0) {
                    const int v = std::atoi(dm->factor.c_str() + 7);
                    if (v < 0 || v >= s.tree.vertex_count)
                        return fail(node, "no such vertex");
                    actual = idx[v];
                } else {
                    return fail(node, "unknown factor '" + dm->factor + "'");
                }
                if (actual != dm->index)
                    return fail(node, "factor index is " + std::to_string(actual));
                if (actual == 1)
                    return fail(node, "dimension mismatch claimed for an index-1 factor");
            } else {
                const auto& ind = std::get<Induction>(bc.disposition);
                if (ind.vertex < 0 || ind.vertex >= s.tree.vertex_count)
                    return fail(node, "no such vertex");
                const auto& sub = s.component_profiles[ind.vertex];
                if (sub.to_string() != ind.profile)
                    return fail(node, "cited profile does not match the component");
                if (sub.punctures() >= profile.punctures())
                    return fail(node, "induction does not decrease the puncture count");
                if (idx[ind.vertex] != 1)
                    return fail(node, "cited component does not have index 1");
                for (int v : s.vertices_on_level(s.tree.levels[ind.vertex]))
                    if (v != ind.vertex && !s.is_cylindrical(v))
                        return fail(node, "level has another noncylindrical component");
                if (!bundle.certificates.count(ind.profile))
                    return fail(node, "dangling reference to " + ind.profile);
            }
        }
        if (listed != expected)
            return fail(key, "boundary list is incomplete or has extra strata");
    }
    return {};
}

std::string certificate_to_json(const CertificateBundle& bundle, int indent)
{
    json certs = json::object();
    for (const auto& [key, c] : bundle.certificates) {
        json boundary = json::array();
        for (const auto& bc : c.boundary) {
            json d;
            if (const auto* dm = std::get_if<DimMismatch>(&bc.disposition))
                d = {{"type", "dim_mismatch"}, {"factor", dm->factor}, {"index", dm->index}};
            else {
                const auto& ind = std::get<Induction>(bc.disposition);
                d = {{"type", "induction"}, {"vertex", ind.vertex}, {"profile", ind.profile}};
            }
            boundary.push_back({{"stratum", bc.stratum}, {"level_indices", bc.level_indices}, {"disposition", d}});
        }
        certs[key] = {{"profile", c.profile},
                      {"punctures", c.punctures},
                      {"fredholm_index", c.fredholm_index},
                      {"kernel_dimension", c.kernel_dimension},
                      {"rank", c.rank},
                      {"parity_odd", c.parity_odd},
                      {"boundary", boundary},
                      {"conclusion", c.conclusion}};
    }
    json doc = {{"orbit", bundle.orbit}, {"root", bundle.root}, {"certificates", certs}};
    return doc.dump(indent);
}

CertificateBundle certificate_from_json(std::string_view text)
{
    try {
        const json doc = json::parse(text);
        CertificateBundle b;
        b.orbit = doc.at("orbit").get<std::size_t>();
        b.root = doc.at("root").get<std::string>();
        for (const auto& [key, c] : doc.at("certificates").items()) {
            EulerCertificate cert;
            cert.profile = c.at("profile").get<std::string>();
            cert.punctures = c.at("punctures").get<int>();
            cert.fredholm_index = c.at("fredholm_index").get<long>();
            cert.kernel_dimension = c.at("kernel_dimension").get<long>();
            cert.rank = c.at("rank").get<long>();
            cert.parity_odd = c.at("parity_odd").get<bool>();
            cert.conclusion = c.at("conclusion").get<long>();
            for (const auto& bj : c.at("boundary")) {
                BoundaryCase bc;
                bc.stratum = bj.at("stratum").get<std::string>();
                bc.level_indices = bj.at("level_indices").get<std::vector<long>>();
                const auto& d = bj.at("disposition");
                const auto type = d.at("type").get<std::string>();
                if (type == "dim_mismatch")
                    bc.disposition = DimMismatch{d.at("factor").get<std::string>(), d.at("index").get<long>()};
                else if (type == "induction")
                    bc.disposition = Induction{d.at("vertex").get<int>(), d.at("profile").get<std::string>()};
                else
                    throw ValidationError("unknown disposition type '" + type + "'");
                cert.boundary.push_back(std::move(bc));
            }
            b.certificates.emplace(key, std::move(cert));
        }
        return b;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed certificate: ") + e.what());
    }
}

}  // namespace orbicover
