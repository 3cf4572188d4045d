#pragma once

#include "orbicover/rational.hpp"

#include <map>
#include <vector>

namespace orbicover {

using SparseVector = std::map<int, Rational>;

/// Row-echelon basis of a growing subspace of Q^n.
class EchelonBasis {
  public:
    /// Adds v if it is independent of the current span; returns whether it was added.
    bool add(SparseVector v);
    bool contains(SparseVector v) const;
    std::size_t rank() const { return pivots_.size(); }

  private:
    SparseVector reduce(SparseVector v) const;
    std::map<int, SparseVector> pivots_;
};

void axpy(SparseVector& y, const Rational& a, const SparseVector& x);

std::size_t rank(const std::vector<SparseVector>& columns);

/// Basis of {c : sum_j c_j columns[j] = 0}, as vectors indexed by column number.
std::vector<SparseVector> kernel_basis(const std::vector<SparseVector>& columns);

}  // namespace orbicover
