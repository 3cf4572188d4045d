#include "orbicover/orbit_catalog.hpp"

#include "orbicover/errors.hpp"

#include <set>

namespace orbicover {

CzBounds iterate_bounds(int simple_index, int k, int half_dim)
{
    const long a = half_dim - 1;
    const long mu = simple_index;
    return {k * (mu - a) + a, k * (mu + a) - a};
}

int cz_iterate(const SimpleOrbit& orbit, int k, int half_dim)
{
    if (k < 1)
        throw PreconditionError("iterate multiplicity must be positive for orbit " + orbit.name);

    struct Visitor {
        const SimpleOrbit& orbit;
        int k;
        int operator()(const HyperbolicModel&) const { return k * orbit.cz_index; }
        int operator()(const EllipticModel& e) const
        {
            if (e.rotation <= 0 || e.rotation >= 1)
                throw ValidationError("elliptic rotation of orbit " + orbit.name + " outside (0,1)");
            return 2 * static_cast<int>(floor_to_long(e.rotation * k)) + 1;
        }
        int operator()(const TableModel& t) const
        {
            if (static_cast<std::size_t>(k) > t.values.size())
                throw PreconditionError("iterate " + std::to_string(k) + " of orbit " + orbit.name +
                                        " beyond CZ table length " + std::to_string(t.values.size()));
            return t.values[k - 1];
        }
    };
    const int value = std::visit(Visitor{orbit, k}, orbit.cz_model);

    if (std::holds_alternative<TableModel>(orbit.cz_model)) {
        const auto b = iterate_bounds(orbit.cz_index, k, half_dim);
        if (value < b.lower || value > b.upper)
            throw ValidationError("CZ table of orbit " + orbit.name + " violates the iterate bounds at k=" +
                                  std::to_string(k) + ": " + std::to_string(b.lower) + " <= " +
                                  std::to_string(value) + " <= " + std::to_string(b.upper) + " fails");
    }
    return value;
}

Rational action_of(const SimpleOrbit& orbit, int k)
{
    return orbit.action * k;
}

bool is_bad(const SimpleOrbit& orbit, int k, int half_dim)
{
    if (k % 2 != 0)
        return false;
    const int base = cz_iterate(orbit, 1, half_dim);
    const int iterate = cz_iterate(orbit, k, half_dim);
    return ((iterate - base) % 2) != 0;
}

Rational form_integral(const SimpleOrbit& orbit, int k, const ClosedForm& form)
{
    if (form.degree != 1)
        return 0;
    auto it = form.integrals.find(orbit.name);
    if (it == form.integrals.end())
        throw ValidationError("form " + form.name + " has no integral over orbit " + orbit.name);
    return it->second * k;
}

OrbitCatalog::OrbitCatalog(int dim_v, std::vector<SimpleOrbit> orbits, std::vector<ClosedForm> forms,
                           int h2_rank, std::vector<Rational> omega_pairing)
    : dim_v_(dim_v), orbits_(std::move(orbits)), forms_(std::move(forms)), h2_rank_(h2_rank),
      omega_pairing_(std::move(omega_pairing))
{
    if (dim_v_ < 3 || dim_v_ % 2 == 0)
        throw ValidationError("dim_v must be odd and >= 3, got " + std::to_string(dim_v_));
    if (h2_rank_ < 0)
        throw ValidationError("h2_rank must be nonnegative");
    if (omega_pairing_.size() != static_cast<std::size_t>(h2_rank_))
        throw ValidationError("omega_pairing has length " + std::to_string(omega_pairing_.size()) +
                              ", expected h2_rank = " + std::to_string(h2_rank_));

    std::set<std::string> names;
    for (const auto& o : orbits_) {
        if (o.name.empty())
            throw ValidationError("orbit with empty name");
        if (!names.insert(o.name).second)
            throw ValidationError("duplicate orbit name " + o.name);
        if (o.period <= 0)
            throw ValidationError("orbit " + o.name + " has nonpositive period");
        if (o.h1_class.size() != orbits_.front().h1_class.size())
            throw ValidationError("orbit " + o.name + " has an h1_class of different rank");

        if (const auto* e = std::get_if<EllipticModel>(&o.cz_model)) {
            if (e->rotation <= 0 || e->rotation >= 1)
                throw ValidationError("elliptic rotation of orbit " + o.name + " outside (0,1)");
            if (o.cz_index != 1)
                throw ValidationError("elliptic orbit " + o.name + " must have cz_index 2*floor(rotation)+1 = 1");
        } else if (const auto* t = std::get_if<TableModel>(&o.cz_model)) {
            if (t->values.empty())
                throw ValidationError("CZ table of orbit " + o.name + " is empty");
            if (t->values.front() != o.cz_index)
                throw ValidationError("CZ table of orbit " + o.name + " does not start with cz_index");
            for (std::size_t k = 1; k <= t->values.size(); ++k)
                cz_iterate(o, static_cast<int>(k), half_dim());
        }
    }

    std::set<std::string> form_names;
    for (const auto& f : forms_) {
        if (f.name.empty())
            throw ValidationError("form with empty name");
        if (!form_names.insert(f.name).second)
            throw ValidationError("duplicate form name " + f.name);
        if (f.degree < 0)
            throw ValidationError("form " + f.name + " has negative degree");
        for (const auto& [orbit_name, value] : f.integrals) {
            if (!names.count(orbit_name))
                throw ValidationError("form " + f.name + " integrates over unknown orbit " + orbit_name);
            if (f.degree != 1 && value != 0)
                throw ValidationError("form " + f.name + " of degree " + std::to_string(f.degree) +
                                      " has a nonzero orbit integral over " + orbit_name);
        }
        if (f.degree == 1)
            for (const auto& o : orbits_)
                if (!f.integrals.count(o.name))
                    throw ValidationError("1-form " + f.name + " is missing the integral over orbit " + o.name);
    }
}

std::size_t OrbitCatalog::orbit_index(std::string_view name) const
{
    for (std::size_t i = 0; i < orbits_.size(); ++i)
        if (orbits_[i].name == name)
            return i;
    throw ValidationError("unknown orbit " + std::string(name));
}

Rational OrbitCatalog::omega(std::span<const long> homology) const
{
    if (homology.size() != omega_pairing_.size())
        throw ValidationError("homology vector has length " + std::to_string(homology.size()) +
                              ", expected h2_rank = " + std::to_string(h2_rank_));
    Rational total = 0;
    for (std::size_t i = 0; i < homology.size(); ++i)
        total += omega_pairing_[i] * homology[i];
    return total;
}

}  // namespace orbicover
