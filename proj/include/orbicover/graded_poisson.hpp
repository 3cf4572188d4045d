#pragma once

#include "orbicover/orbit_catalog.hpp"

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orbicover {

/// Algebra-wide cut-off: generator action <= max_action, q/p word length <= max_word,
/// t-degree <= max_t_degree.
struct Truncation {
    Rational max_action = 3;
    int max_word = 4;
    int max_t_degree = 2;
    bool operator==(const Truncation&) const = default;
};

/// Parses "T=3,W=4,K=2"; missing keys keep the values of `base`.
Truncation parse_truncation(std::string_view text, const Truncation& base = {});

struct GradingConvention {
    std::string name;
    std::function<int(const OrbitCatalog&, const IteratedOrbit&)> q_degree;
    std::function<int(const OrbitCatalog&, const IteratedOrbit&)> p_degree;

    /// deg q = mu + (m-3), deg p = -mu + (m-3).
    static GradingConvention sft();
};

enum class GeneratorKind { Q, P, T };

struct Generator {
    GeneratorKind kind;
    IteratedOrbit orbit;    // Q and P only
    std::size_t form = 0;   // T only
    int degree = 0;
    bool odd() const { return degree % 2 != 0; }
};

/// Product of generators with exponents, sorted by generator id, times e^A.
/// Odd generators appear with exponent 1 only.
struct Monomial {
    std::vector<std::pair<int, int>> factors;
    std::vector<long> homology;
    auto operator<=>(const Monomial&) const = default;
};

class GradedElement;

/// The graded commutative algebra in q, p, t and e^A for one catalog and truncation.
/// Generator ids: all q's (by orbit, then multiplicity), then the p's in the same order, then the t's.
class Algebra : public std::enable_shared_from_this<Algebra> {
  public:
    static std::shared_ptr<const Algebra> create(OrbitCatalog catalog, Truncation truncation,
                                                 GradingConvention convention = GradingConvention::sft());

    const OrbitCatalog& catalog() const { return catalog_; }
    const Truncation& truncation() const { return truncation_; }
    const GradingConvention& convention() const { return convention_; }
    const std::vector<Generator>& generators() const { return generators_; }
    const Generator& generator(int id) const { return generators_.at(id); }

    /// Good iterates with action <= T, in generator order.
    const std::vector<IteratedOrbit>& iterates() const { return iterates_; }
    std::optional<int> q_id(const IteratedOrbit& g) const;
    std::optional<int> p_id(const IteratedOrbit& g) const;
    int t_id(std::size_t form) const;

    int grade(const Monomial& m) const;
    int word_length(const Monomial& m) const;
    int t_degree(const Monomial& m) const;
    bool within_truncation(const Monomial& m) const;
    std::string render(const Monomial& m) const;
    std::string render(int generator) const;

    GradedElement zero() const;
    GradedElement constant(const Rational& c) const;
    GradedElement q(const IteratedOrbit& g) const;
    GradedElement p(const IteratedOrbit& g) const;
    GradedElement t(std::size_t form) const;
    GradedElement e(std::vector<long> homology) const;
    GradedElement monomial(Monomial m, const Rational& c = 1) const;

    bool operator==(const Algebra& other) const;

  private:
    Algebra(OrbitCatalog catalog, Truncation truncation, GradingConvention convention);

    OrbitCatalog catalog_;
    Truncation truncation_;
    GradingConvention convention_;
    std::vector<Generator> generators_;
    std::vector<IteratedOrbit> iterates_;
    std::map<IteratedOrbit, int> q_ids_;
};

/// Finite sum of monomials with nonzero rational coefficients, all within the algebra's truncation.
class GradedElement {
  public:
    using Terms = std::map<Monomial, Rational>;

    GradedElement(std::shared_ptr<const Algebra> algebra, Terms terms = {});

    const Algebra& algebra() const { return *algebra_; }
    const std::shared_ptr<const Algebra>& algebra_ptr() const { return algebra_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::string render() const;

    GradedElement operator+(const GradedElement& other) const;
    GradedElement operator-(const GradedElement& other) const;
    GradedElement operator-() const;
    GradedElement operator*(const GradedElement& other) const;
    friend GradedElement operator*(const Rational& c, const GradedElement& f);
    bool operator==(const GradedElement& other) const;

  private:
    std::shared_ptr<const Algebra> algebra_;
    Terms terms_;
};

/// Product of two monomials with the Koszul sign, or nullopt when an odd generator would square.
std::optional<std::pair<Monomial, int>> multiply_monomials(const Algebra& algebra, const Monomial& a,
                                                           const Monomial& b);

GradedElement multiply(const GradedElement& f, const GradedElement& g);

/// {f,g} = sum over generators a,b of (f d<-/da) w^{ab} (d->/db g), with
/// w^{p q} = (-1)^{|q|} kappa and w^{q p} = -kappa for each good iterate of multiplicity kappa,
/// so that {t p q, q} = t q for a 1-form variable t.
GradedElement poisson_bracket(const GradedElement& f, const GradedElement& g);

/// d f = {h, f}.
GradedElement differential(const GradedElement& h, const GradedElement& f);

int grade(const Monomial& m, const Algebra& algebra);

}  // namespace orbicover
