#include "orbicover/spectral_sequence.hpp"

#include "orbicover/errors.hpp"

#include <algorithm>

namespace orbicover {

namespace {

bool t_cut_is_harmless(const Algebra& alg)
{
    int odd = 0;
    for (const auto& g : alg.generators())
        if (g.kind == GeneratorKind::T) {
            if (!g.odd())
                return false;
            ++odd;
        }
    return alg.truncation().max_t_degree >= odd;
}

bool clean(const FilteredComplex& complex, const BlockKey& key)
{
    return key.t_degree < complex.algebra->truncation().max_t_degree || t_cut_is_harmless(*complex.algebra) ||
           complex.hamiltonian.total().is_zero();
}

}  // namespace

BlockKey block_of(const FilteredComplex& complex, const Monomial& m)
{
    const auto& alg = *complex.algebra;
    return {action_filtration(m, alg), alg.grade(m), alg.t_degree(m)};
}

SpectralPage e1_page(const FilteredComplex& complex)
{
    SpectralPage page;
    page.page_index = 1;
    for (int j = 0; j < static_cast<int>(complex.basis.size()); ++j) {
        const auto key = block_of(complex, complex.basis[j]);
        auto& block = page.blocks[key];
        block.cells.push_back(j);
        ++block.dimension;
        block.truncation_clean = clean(complex, key);
        for (const auto& [i, v] : complex.differential[j])
            if (block_of(complex, complex.basis[i]).level != key.level)
                throw InvariantViolation("d1 changes the filtration level of " + complex.algebra->render(complex.basis[j]));
    }
    page.differential = complex.differential;
    return page;
}

SpectralPage e2_page(const FilteredComplex& complex, bool strict)
{
    const SpectralPage e1 = e1_page(complex);
    SpectralPage e2;
    e2.page_index = 2;

    // Boundaries landing in each block.
    std::map<BlockKey, std::vector<SparseVector>> incoming;
    for (const auto& [key, block] : e1.blocks)
        for (int j : block.cells)
            if (!complex.differential[j].empty())
                incoming[block_of(complex, complex.basis[complex.differential[j].begin()->first])].push_back(
                    complex.differential[j]);

    for (const auto& [key, block] : e1.blocks) {
        std::vector<SparseVector> columns;
        for (int j : block.cells)
            columns.push_back(complex.differential[j]);
        EchelonBasis span;
        for (const auto& b : incoming[key])
            span.add(b);
        PageBlock out;
        out.truncation_clean = block.truncation_clean;
        for (const auto& k : kernel_basis(columns)) {
            SparseVector cycle;
            for (const auto& [local, c] : k)
                cycle.emplace(block.cells[local], c);
            if (span.add(cycle))
                out.representatives.push_back(std::move(cycle));
        }
        out.dimension = out.representatives.size();
        if (out.dimension > 0)
            e2.blocks.emplace(key, std::move(out));
    }

    if (strict) {
        const auto mismatches = compare_with_free_algebra(complex, e2);
        if (!mismatches.empty()) {
            const auto& m = mismatches.front();
            throw InvariantViolation("E2 differs from the free algebra on the annihilated q's in block (level " +
                                     to_string(m.key.level) + ", degree " + std::to_string(m.key.degree) +
                                     ", t-degree " + std::to_string(m.key.t_degree) + "): computed " +
                                     std::to_string(m.computed) + ", predicted " + std::to_string(m.predicted));
        }
    }
    return e2;
}

std::vector<IteratedOrbit> surviving_generators(const Algebra& algebra)
{
    std::vector<IteratedOrbit> out;
    const auto& catalog = algebra.catalog();
    for (const auto& g : algebra.iterates()) {
        bool annihilated = true;
        for (std::size_t i = 0; i < catalog.forms().size(); ++i)
            if (catalog.forms()[i].degree == 1 && catalog.integral(g, i) != 0)
                annihilated = false;
        if (annihilated)
            out.push_back(g);
    }
    return out;
}

std::map<BlockKey, std::size_t> predicted_free_algebra(const FilteredComplex& complex)
{
    const auto& alg = *complex.algebra;
    std::vector<bool> allowed(alg.generators().size(), false);
    for (const auto& g : surviving_generators(alg))
        allowed[*alg.q_id(g)] = true;
    for (int g = 0; g < static_cast<int>(alg.generators().size()); ++g)
        if (alg.generator(g).kind == GeneratorKind::T)
            allowed[g] = true;
    std::map<BlockKey, std::size_t> out;
    for (const auto& m : complex.basis)
        if (std::all_of(m.factors.begin(), m.factors.end(), [&](const auto& f) { return allowed[f.first]; }))
            ++out[block_of(complex, m)];
    return out;
}

std::vector<BlockMismatch> compare_with_free_algebra(const FilteredComplex& complex, const SpectralPage& e2)
{
    const auto predicted = predicted_free_algebra(complex);
    std::map<BlockKey, std::pair<std::size_t, std::size_t>> both;
    for (const auto& [key, n] : predicted)
        both[key].second = n;
    for (const auto& [key, block] : e2.blocks)
        both[key].first = block.dimension;
    std::vector<BlockMismatch> out;
    for (const auto& [key, dims] : both)
        if (dims.first != dims.second && clean(complex, key))
            out.push_back({key, dims.first, dims.second});
    return out;
}

bool vanishing_check(const Algebra& algebra)
{
    return surviving_generators(algebra).empty();
}

}  // namespace orbicover
