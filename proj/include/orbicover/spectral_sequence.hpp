#pragma once

#include "orbicover/sft_homology.hpp"

#include <tuple>
#include <map>
#include <string>
#include <vector>

namespace orbicover {

struct BlockKey {
    Rational level;
    int degree = 0;
    int t_degree = 0;
    bool operator==(const BlockKey&) const = default;
    bool operator<(const BlockKey& o) const
    {
        if (level != o.level)
            return level < o.level;
        return std::tie(degree, t_degree) < std::tie(o.degree, o.t_degree);
    }
};

struct PageBlock {
    std::vector<int> cells;                   // E1: basis indices of the complex
    std::vector<SparseVector> representatives;  // E2: cycles spanning a complement of the boundaries
    std::size_t dimension = 0;
    bool truncation_clean = true;  // homology here is unaffected by the t-degree cut-off
};

/// E1 is the associated graded of the truncated algebra by filtration level with d1 = d0;
/// E2 is its homology. Coefficients of representatives are indexed by basis position.
struct SpectralPage {
    int page_index = 1;
    std::map<BlockKey, PageBlock> blocks;
    std::vector<SparseVector> differential;  // d1 on E1, empty on E2
};

BlockKey block_of(const FilteredComplex& complex, const Monomial& m);

SpectralPage e1_page(const FilteredComplex& complex);

/// Homology of (E1, d1). With `strict`, throws InvariantViolation when a truncation-clean block
/// disagrees with the free algebra on the q's that all forms annihilate.
SpectralPage e2_page(const FilteredComplex& complex, bool strict = true);

/// Good iterates whose integrals against every 1-form vanish.
std::vector<IteratedOrbit> surviving_generators(const Algebra& algebra);

/// Block dimensions of the free graded-commutative algebra on the surviving q's over Q[t] (truncated).
std::map<BlockKey, std::size_t> predicted_free_algebra(const FilteredComplex& complex);

struct BlockMismatch {
    BlockKey key;
    std::size_t computed = 0;
    std::size_t predicted = 0;
};

std::vector<BlockMismatch> compare_with_free_algebra(const FilteredComplex& complex, const SpectralPage& e2);

/// True iff every good iterate in range has a nonzero integral against some 1-form.
bool vanishing_check(const Algebra& algebra);

}  // namespace orbicover
