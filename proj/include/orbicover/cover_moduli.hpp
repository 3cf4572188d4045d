#pragma once

#include "orbicover/orbit_catalog.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace orbicover {

/// Asymptotic data (m+; m-) of a moduli space of branched covers of the trivial cylinder over one simple orbit.
/// Multiplicities are kept sorted in descending order; puncture labels 1..n± refer to that order.
class MultiplicityProfile {
  public:
    MultiplicityProfile() = default;
    MultiplicityProfile(std::vector<int> positives, std::vector<int> negatives, std::size_t orbit = 0);

    /// "m+_1,...;m-_1,..." e.g. "2;1,1".
    static MultiplicityProfile parse(std::string_view text, std::size_t orbit = 0);
    std::string to_string() const;

    std::size_t orbit() const { return orbit_; }
    const std::vector<int>& positives() const { return positives_; }
    const std::vector<int>& negatives() const { return negatives_; }
    int punctures() const { return static_cast<int>(positives_.size() + negatives_.size()); }
    long positive_total() const;
    long negative_total() const;

    auto operator<=>(const MultiplicityProfile&) const = default;

  private:
    std::size_t orbit_ = 0;
    std::vector<int> positives_;
    std::vector<int> negatives_;
};

bool balanced(const MultiplicityProfile& profile);

/// Index of the linearized Cauchy-Riemann operator on the moduli space before the R-quotient.
long fredholm_index(const MultiplicityProfile& profile, const OrbitCatalog& catalog);

/// Range ((2-n)(2m-4), 2n-4) for the index of n-punctured orbit curves; requires n >= 3.
std::pair<long, long> index_range(int punctures, int half_dim);

struct ModuliDimension {
    int quotient = 0;      // dim of the R-quotient moduli space
    int unquotiented = 0;  // quotient + 1
    long point_count = 0;  // number of elements when the space is finite (n = 2), otherwise 0
};

ModuliDimension moduli_dimension(const MultiplicityProfile& profile);

/// Dimension of the kernel of the linearized operator, 2 + 2(n-3) for n >= 3.
long kernel_dimension(const MultiplicityProfile& profile);

long cokernel_rank(const MultiplicityProfile& profile, const OrbitCatalog& catalog);
bool nonregularity_check(const MultiplicityProfile& profile, const OrbitCatalog& catalog);

/// Sum of positive actions minus negative actions plus omega(A).
Rational omega_energy(const MultiplicityProfile& profile, const OrbitCatalog& catalog,
                      std::span<const long> homology);

struct ModuliSummary {
    MultiplicityProfile profile;
    int n = 0;
    long fredholm_index = 0;
    int actual_dim_quotient = 0;
    int actual_dim() const { return actual_dim_quotient + 1; }
    long cokernel_rank = 0;  // 0 for n = 2
    std::pair<long, long> marker_counts;
    bool regular = true;
};

ModuliSummary summarize(const MultiplicityProfile& profile, const OrbitCatalog& catalog);

}  // namespace orbicover
