#include "orbicover/sparse_linalg.hpp"

namespace orbicover {

void axpy(SparseVector& y, const Rational& a, const SparseVector& x)
{
    if (a == 0)
        return;
    for (const auto& [i, v] : x) {
        auto [it, inserted] = y.emplace(i, a * v);
        if (!inserted) {
            it->second += a * v;
            if (it->second == 0)
                y.erase(it);
        }
    }
}

SparseVector EchelonBasis::reduce(SparseVector v) const
{
    auto it = v.begin();
    while (it != v.end()) {
        auto p = pivots_.find(it->first);
        if (p == pivots_.end()) {
            ++it;
            continue;
        }
        const int row = it->first;
        axpy(v, -it->second / p->second.at(row), p->second);
        it = v.upper_bound(row);
    }
    return v;
}

bool EchelonBasis::add(SparseVector v)
{
    v = reduce(std::move(v));
    if (v.empty())
        return false;
    const int row = v.begin()->first;
    pivots_.emplace(row, std::move(v));
    return true;
}

bool EchelonBasis::contains(SparseVector v) const
{
    return reduce(std::move(v)).empty();
}

std::size_t rank(const std::vector<SparseVector>& columns)
{
    EchelonBasis basis;
    for (const auto& c : columns)
        basis.add(c);
    return basis.rank();
}

std::vector<SparseVector> kernel_basis(const std::vector<SparseVector>& columns)
{
    // Eliminate on the columns while tracking the combination that produced each reduced vector.
    std::map<int, std::pair<SparseVector, SparseVector>> pivots;
    std::vector<SparseVector> kernel;
    for (int j = 0; j < static_cast<int>(columns.size()); ++j) {
        SparseVector v = columns[j];
        SparseVector combo{{j, Rational(1)}};
        auto it = v.begin();
        while (it != v.end()) {
            auto p = pivots.find(it->first);
            if (p == pivots.end()) {
                ++it;
                continue;
            }
            const int row = it->first;
            const Rational a = -it->second / p->second.first.at(row);
            axpy(v, a, p->second.first);
            axpy(combo, a, p->second.second);
            it = v.upper_bound(row);
        }
        if (v.empty())
            kernel.push_back(std::move(combo));
        else {
            const int row = v.begin()->first;
            pivots.emplace(row, std::pair{std::move(v), std::move(combo)});
        }
    }
    return kernel;
}

}  // namespace orbicover
