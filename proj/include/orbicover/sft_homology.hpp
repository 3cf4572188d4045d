#pragma once

#include "orbicover/graded_poisson.hpp"
#include "orbicover/sparse_linalg.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace orbicover {

enum class TermSource { OrbitCylinder, BranchedCoverZero };

struct ProvenanceEntry {
    TermSource source;
    std::string profile;  // "S;m+...;m-..." for branched covers, orbit name for cylinders
    Rational count;       // coefficient actually contributed
};

struct Hamiltonian {
    GradedElement element;
    std::map<Monomial, ProvenanceEntry> provenance;
    /// Extension point for curve counts of positive omega-energy; zero unless supplied by the caller.
    GradedElement higher;

    GradedElement total() const { return element + higher; }
};

/// h0 = sum over good iterates gamma^k with action <= T and 1-forms theta_i of
/// k * int_gamma theta_i * p_{gamma^k} q_{gamma^k} t_i. Branched-cover monomials up to the word length
/// are recorded in the provenance with count 0.
Hamiltonian hamiltonian_h0(const std::shared_ptr<const Algebra>& algebra);

/// Sum of q actions minus p actions plus omega(A); t's have level 0.
Rational action_filtration(const Monomial& m, const Algebra& algebra);

/// The contact-homology complex on q/t monomials within the truncation, with d = {h, .} restricted
/// to p-free terms.
struct FilteredComplex {
    std::shared_ptr<const Algebra> algebra;
    Hamiltonian hamiltonian;
    std::vector<Monomial> basis;
    std::map<Monomial, int> index;
    std::vector<SparseVector> differential;  // column j = d(basis[j])
    std::vector<Rational> filtration_levels;

    GradedElement apply(const GradedElement& x) const;
    GradedElement basis_element(int j) const;
};

FilteredComplex ch_differential(const std::shared_ptr<const Algebra>& algebra);
FilteredComplex ch_differential(const std::shared_ptr<const Algebra>& algebra, Hamiltonian hamiltonian);

/// All q/t monomials (no p, trivial e^A) within the truncation, sorted.
std::vector<Monomial> q_basis(const Algebra& algebra);

enum class FiltrationClass { StrictlyDecreasing, Preserving, Violating };

std::string to_string(FiltrationClass c);

/// Classification of every basis monomial by comparing the filtration of each term of d x with that of x.
std::vector<std::pair<Monomial, FiltrationClass>> filtration_behavior(const FilteredComplex& complex);

bool master_equation_holds(const Hamiltonian& h);
bool differential_squares_to_zero(const FilteredComplex& complex);

}  // namespace orbicover
