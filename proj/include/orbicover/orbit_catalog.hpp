#pragma once

#include "orbicover/rational.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace orbicover {

/// mu(gamma^k) = k * mu(gamma).
struct HyperbolicModel {
    bool operator==(const HyperbolicModel&) const = default;
};

/// mu(gamma^k) = 2 floor(k * rotation) + 1, rotation in (0,1).
/// The flag marks a rational stand-in for an irrational rotation number; it does not change the formula.
struct EllipticModel {
    Rational rotation;
    bool irrational_approximant = false;
    bool operator==(const EllipticModel&) const = default;
};

/// Explicit iterates: values[k-1] = mu(gamma^k).
struct TableModel {
    std::vector<int> values;
    bool operator==(const TableModel&) const = default;
};

using CzModel = std::variant<HyperbolicModel, EllipticModel, TableModel>;

struct SimpleOrbit {
    std::string name;
    int cz_index = 0;
    Rational period;
    Rational action;
    std::vector<long> h1_class;
    CzModel cz_model;
    bool operator==(const SimpleOrbit&) const = default;
};

/// The k-fold cover of a catalog orbit; `multiplicity` is the covering number kappa.
struct IteratedOrbit {
    std::size_t orbit = 0;
    int multiplicity = 1;
    auto operator<=>(const IteratedOrbit&) const = default;
};

struct ClosedForm {
    std::string name;
    int degree = 0;
    std::map<std::string, Rational> integrals;  // orbit name -> integral over the simple orbit
    bool operator==(const ClosedForm&) const = default;
};

/// Lower and upper estimate for mu(gamma^k) in terms of mu(gamma) and the half dimension m.
struct CzBounds {
    long lower;
    long upper;
};

CzBounds iterate_bounds(int simple_index, int k, int half_dim);

int cz_iterate(const SimpleOrbit& orbit, int k, int half_dim);
Rational action_of(const SimpleOrbit& orbit, int k);
bool is_bad(const SimpleOrbit& orbit, int k, int half_dim);
Rational form_integral(const SimpleOrbit& orbit, int k, const ClosedForm& form);

/// Validated, immutable geometric input data.
class OrbitCatalog {
  public:
    OrbitCatalog(int dim_v, std::vector<SimpleOrbit> orbits, std::vector<ClosedForm> forms, int h2_rank,
                 std::vector<Rational> omega_pairing);

    int dim_v() const { return dim_v_; }
    int half_dim() const { return (dim_v_ + 1) / 2; }
    int h2_rank() const { return h2_rank_; }
    const std::vector<SimpleOrbit>& orbits() const { return orbits_; }
    const std::vector<ClosedForm>& forms() const { return forms_; }
    const std::vector<Rational>& omega_pairing() const { return omega_pairing_; }

    const SimpleOrbit& orbit(std::size_t i) const { return orbits_.at(i); }
    std::size_t orbit_index(std::string_view name) const;

    int cz(const IteratedOrbit& g) const { return cz_iterate(orbit(g.orbit), g.multiplicity, half_dim()); }
    Rational action(const IteratedOrbit& g) const { return action_of(orbit(g.orbit), g.multiplicity); }
    bool bad(const IteratedOrbit& g) const { return is_bad(orbit(g.orbit), g.multiplicity, half_dim()); }
    Rational integral(const IteratedOrbit& g, std::size_t form) const
    {
        return form_integral(orbit(g.orbit), g.multiplicity, forms_.at(form));
    }

    /// omega(A) for a class given in the catalog's H_2 basis.
    Rational omega(std::span<const long> homology) const;

    bool operator==(const OrbitCatalog&) const = default;

  private:
    int dim_v_;
    std::vector<SimpleOrbit> orbits_;
    std::vector<ClosedForm> forms_;
    int h2_rank_;
    std::vector<Rational> omega_pairing_;
};

}  // namespace orbicover
