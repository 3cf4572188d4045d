#pragma once

#include "orbicover/orbit_catalog.hpp"

#include <random>
#include <string>
#include <vector>

namespace orbicover::testing {

inline SimpleOrbit hyperbolic(std::string name, int mu, Rational action = 1)
{
    return {std::move(name), mu, Rational(1), action, {}, HyperbolicModel{}};
}

inline SimpleOrbit elliptic(std::string name, Rational rotation, Rational action = 1)
{
    return {std::move(name), 1, Rational(1), action, {}, EllipticModel{rotation, false}};
}

inline SimpleOrbit table(std::string name, std::vector<int> values, Rational action = 1)
{
    const int mu = values.empty() ? 0 : values.front();
    return {std::move(name), mu, Rational(1), action, {}, TableModel{std::move(values)}};
}

inline OrbitCatalog single_orbit(SimpleOrbit orbit, int dim_v = 3)
{
    return OrbitCatalog(dim_v, {std::move(orbit)}, {}, 0, {});
}

inline OrbitCatalog pants_catalog()
{
    return single_orbit(hyperbolic("g", 1));
}

// CZ sequence of a product of planar blocks: elliptic blocks 2 floor(k rho)+1, hyperbolic blocks k mu.
inline std::vector<int> block_sum_table(const std::vector<Rational>& rotations, const std::vector<int>& hyperbolic_mu,
                                        int length)
{
    std::vector<int> values;
    for (int k = 1; k <= length; ++k) {
        long v = 0;
        for (const auto& rho : rotations) {
            const Rational x = rho * k;
            v += 2 * static_cast<long>(numerator(x) / denominator(x)) + 1;
        }
        for (int mu : hyperbolic_mu)
            v += static_cast<long>(k) * mu;
        values.push_back(static_cast<int>(v));
    }
    return values;
}

// Two orbits, one 1-form: integral 1 over the first orbit, 0 over the second.
inline OrbitCatalog two_orbit_catalog()
{
    std::vector<SimpleOrbit> orbits{elliptic("γ", Rational(1, 10)), elliptic("δ", Rational(1, 10))};
    return OrbitCatalog(3, orbits, {ClosedForm{"θ", 1, {{"γ", Rational(1)}, {"δ", Rational(0)}}}}, 0, {});
}

inline OrbitCatalog random_catalog(std::mt19937_64& rng, int max_orbits = 3, int max_forms = 2)
{
    std::uniform_int_distribution<int> orbit_count(1, max_orbits), form_count(0, max_forms), model(0, 2);
    std::uniform_int_distribution<int> small(-3, 3), action(1, 3), dim(0, 1);
    const int dim_v = dim(rng) ? 5 : 3;
    std::vector<SimpleOrbit> orbits;
    const int n = orbit_count(rng);
    for (int i = 0; i < n; ++i) {
        const std::string name = "o" + std::to_string(i);
        switch (model(rng)) {
        case 0:
            orbits.push_back(hyperbolic(name, small(rng), Rational(action(rng), 2)));
            break;
        case 1:
            orbits.push_back(elliptic(name, Rational(std::uniform_int_distribution<int>(1, 9)(rng), 10),
                                      Rational(action(rng), 2)));
            break;
        default:
            orbits.push_back(hyperbolic(name, 2 * small(rng) + 1, Rational(action(rng))));
            break;
        }
    }
    std::vector<ClosedForm> forms;
    const int f = form_count(rng);
    for (int j = 0; j < f; ++j) {
        ClosedForm form{"th" + std::to_string(j), 1, {}};
        for (const auto& o : orbits)
            form.integrals[o.name] = Rational(small(rng));
        forms.push_back(std::move(form));
    }
    return OrbitCatalog(dim_v, orbits, forms, 0, {});
}

}  // namespace orbicover::testing
