#pragma once

#include "orbicover/cover_moduli.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace orbicover {

/// Labelled tree with (based) level structure describing the combinatorial type of a level curve.
/// Vertices are 0..vertex_count-1; puncture labels are 1-based positions in the canonical profile.
struct LevelTree {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> lambda_plus;
    std::vector<std::vector<int>> lambda_minus;
    std::vector<int> levels;            // values in 1..L
    std::optional<int> base_level;      // set only for strata of the unquotiented moduli space

    int level_count() const;
    bool operator==(const LevelTree&) const = default;
};

/// Signed multiplicities m_ab, stored for both orientations of every edge (m_ba = -m_ab).
/// m_ab > 0 means the edge is a positive puncture of a, i.e. b lies one level above a.
using EdgeMultiplicities = std::map<std::pair<int, int>, long>;

/// Unique solution of the vertex balance  sum_b m_ab + sum_{Lambda+_a} m+ - sum_{Lambda-_a} m- = 0,
/// computed by peeling leaves.
EdgeMultiplicities derive_edge_multiplicities(const LevelTree& tree, const MultiplicityProfile& profile);

struct StratumValidation {
    bool valid = true;
    std::vector<std::string> violations;
};

StratumValidation validate_stratum(const LevelTree& tree, const MultiplicityProfile& profile);

struct StratumSummary {
    LevelTree tree;
    EdgeMultiplicities edge_mult;
    int level_count = 0;
    int node_count = 0;
    int codim = 0;
    long fiber_group_order = 1;
    std::vector<MultiplicityProfile> component_profiles;  // indexed like tree vertices
    std::string canonical;

    bool is_cylindrical(int vertex) const;
    std::vector<int> vertices_on_level(int level) const;
};

/// Builds the summary of a stratum; throws ValidationError listing the violations if it is not valid.
StratumSummary summarize_stratum(const LevelTree& tree, const MultiplicityProfile& profile);

int codimension(const StratumSummary& stratum);
long fiber_group_order(const StratumSummary& stratum);

/// All valid two-level, node-free strata of the R-quotient moduli space, sorted by canonical form.
/// Each summary's vertices are numbered in canonical order.
const std::vector<StratumSummary>& enumerate_codim1(const MultiplicityProfile& profile);

std::pair<long, long> marker_count(const MultiplicityProfile& profile);

/// Isomorphism-invariant text encoding, e.g. "v=[L1(-1,-2);L1(-3);L2(+1)] e=[0-2:2;1-2:1]".
std::string canonical_form(const LevelTree& tree, const EdgeMultiplicities& mult);

struct ParsedStratum {
    LevelTree tree;
    std::vector<long> edge_abs_mult;  // parallel to tree.edges
};

ParsedStratum parse_canonical(std::string_view text);

}  // namespace orbicover
