#include "orbicover/cover_moduli.hpp"

#include "orbicover/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace orbicover {

MultiplicityProfile::MultiplicityProfile(std::vector<int> positives, std::vector<int> negatives, std::size_t orbit)
    : orbit_(orbit), positives_(std::move(positives)), negatives_(std::move(negatives))
{
    if (positives_.empty() || negatives_.empty())
        throw ValidationError("a profile needs at least one positive and one negative puncture");
    for (int m : positives_)
        if (m < 1)
            throw ValidationError("multiplicities must be positive");
    for (int m : negatives_)
        if (m < 1)
            throw ValidationError("multiplicities must be positive");
    std::sort(positives_.begin(), positives_.end(), std::greater<>());
    std::sort(negatives_.begin(), negatives_.end(), std::greater<>());
}

namespace {

std::vector<int> parse_list(std::string_view text, std::string_view whole)
{
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        if (item.empty() || item.size() > 6 || !std::all_of(item.begin(), item.end(), ::isdigit))
            throw ValidationError("malformed profile '" + std::string(whole) + "'");
        out.push_back(std::stoi(std::string(item)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

MultiplicityProfile MultiplicityProfile::parse(std::string_view text, std::size_t orbit)
{
    auto semi = text.find(';');
    if (semi == std::string_view::npos || text.find(';', semi + 1) != std::string_view::npos)
        throw ValidationError("profile '" + std::string(text) + "' must have the form 'm+,...;m-,...'");
    return MultiplicityProfile(parse_list(text.substr(0, semi), text), parse_list(text.substr(semi + 1), text), orbit);
}

std::string MultiplicityProfile::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < positives_.size(); ++i)
        os << (i ? "," : "") << positives_[i];
    os << ';';
    for (std::size_t i = 0; i < negatives_.size(); ++i)
        os << (i ? "," : "") << negatives_[i];
    return os.str();
}

long MultiplicityProfile::positive_total() const
{
    return std::accumulate(positives_.begin(), positives_.end(), 0L);
}

long MultiplicityProfile::negative_total() const
{
    return std::accumulate(negatives_.begin(), negatives_.end(), 0L);
}

bool balanced(const MultiplicityProfile& profile)
{
    return profile.positive_total() == profile.negative_total();
}

long fredholm_index(const MultiplicityProfile& profile, const OrbitCatalog& catalog)
{
    if (!balanced(profile))
        throw PreconditionError("fredholm_index requires a balanced profile, got " + profile.to_string());
    const auto& orbit = catalog.orbit(profile.orbit());
    const int m = catalog.half_dim();
    long index = 0;
    for (int k : profile.positives())
        index += cz_iterate(orbit, k, m);
    for (int k : profile.negatives())
        index -= cz_iterate(orbit, k, m);
    index += static_cast<long>(m - 3) * (2 - profile.punctures());
    return index;
}

std::pair<long, long> index_range(int punctures, int half_dim)
{
    if (punctures < 3)
        throw PreconditionError("index_range needs at least three punctures");
    return {static_cast<long>(2 - punctures) * (2 * half_dim - 4), 2L * punctures - 4};
}

ModuliDimension moduli_dimension(const MultiplicityProfile& profile)
{
    if (!balanced(profile))
        throw PreconditionError("moduli_dimension requires a balanced profile, got " + profile.to_string());
    const int n = profile.punctures();
    if (n <= 1)
        throw PreconditionError("orbit curves have at least two punctures");
    if (n == 2) {
        const long m = profile.positives().front();
        return {0, 1, m * m};
    }
    const int dim = 1 + 2 * (n - 3);
    return {dim, dim + 1, 0};
}

long kernel_dimension(const MultiplicityProfile& profile)
{
    const int n = profile.punctures();
    if (n < 3)
        throw PreconditionError("kernel dimension is tracked only for n >= 3");
    return 2 + 2L * (n - 3);
}

long cokernel_rank(const MultiplicityProfile& profile, const OrbitCatalog& catalog)
{
    if (profile.punctures() < 3)
        throw PreconditionError("cokernel_rank needs at least three punctures, got " + profile.to_string());
    const long rank = kernel_dimension(profile) - fredholm_index(profile, catalog);
    if (rank < 0)
        throw ValidationError("negative cokernel rank for " + profile.to_string() +
                              ": the CZ data is inconsistent with the moduli dimension");
    return rank;
}

bool nonregularity_check(const MultiplicityProfile& profile, const OrbitCatalog& catalog)
{
    if (!balanced(profile))
        throw PreconditionError("nonregularity_check requires a balanced profile");
    if (profile.punctures() < 3)
        return false;
    return fredholm_index(profile, catalog) < kernel_dimension(profile);
}

Rational omega_energy(const MultiplicityProfile& profile, const OrbitCatalog& catalog, std::span<const long> homology)
{
    const auto& orbit = catalog.orbit(profile.orbit());
    Rational energy = catalog.omega(homology);
    for (int k : profile.positives())
        energy += action_of(orbit, k);
    for (int k : profile.negatives())
        energy -= action_of(orbit, k);
    return energy;
}

ModuliSummary summarize(const MultiplicityProfile& profile, const OrbitCatalog& catalog)
{
    ModuliSummary s;
    s.profile = profile;
    s.n = profile.punctures();
    s.fredholm_index = fredholm_index(profile, catalog);
    s.actual_dim_quotient = moduli_dimension(profile).quotient;
    s.cokernel_rank = s.n >= 3 ? cokernel_rank(profile, catalog) : 0;
    long plus = 1, minus = 1;
    for (int k : profile.positives())
        plus *= k;
    for (int k : profile.negatives())
        minus *= k;
    s.marker_counts = {plus, minus};
    s.regular = !nonregularity_check(profile, catalog);
    return s;
}

}  // namespace orbicover
