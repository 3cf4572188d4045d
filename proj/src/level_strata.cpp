#include "orbicover/level_strata.hpp"

#include "orbicover/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace orbicover {

int LevelTree::level_count() const
{
    return levels.empty() ? 0 : *std::max_element(levels.begin(), levels.end());
}

namespace {

bool is_tree(const LevelTree& tree)
{
    const int n = tree.vertex_count;
    if (n <= 0 || static_cast<int>(tree.edges.size()) != n - 1)
        return false;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : tree.edges) {
        if (a < 0 || b < 0 || a >= n || b >= n || a == b)
            return false;
        int ra = find(a), rb = find(b);
        if (ra == rb)
            return false;
        parent[ra] = rb;
    }
    return true;
}

long signed_excess(const LevelTree& tree, const MultiplicityProfile& profile, int v)
{
    long e = 0;
    for (int k : tree.lambda_plus[v])
        e += profile.positives().at(k - 1);
    for (int k : tree.lambda_minus[v])
        e -= profile.negatives().at(k - 1);
    return e;
}

struct VertexPunctures {
    std::vector<int> positive;
    std::vector<int> negative;
    int total() const { return static_cast<int>(positive.size() + negative.size()); }
};

VertexPunctures punctures_of(const LevelTree& tree, const MultiplicityProfile& profile,
                             const EdgeMultiplicities& mult, int v)
{
    VertexPunctures p;
    for (int k : tree.lambda_plus[v])
        p.positive.push_back(profile.positives().at(k - 1));
    for (int k : tree.lambda_minus[v])
        p.negative.push_back(profile.negatives().at(k - 1));
    for (auto [a, b] : tree.edges) {
        if (a != v && b != v)
            continue;
        const int other = a == v ? b : a;
        const long m = mult.at({v, other});
        if (m > 0)
            p.positive.push_back(static_cast<int>(m));
        else if (m < 0)
            p.negative.push_back(static_cast<int>(-m));
    }
    return p;
}

bool cylindrical(const VertexPunctures& p)
{
    return p.positive.size() == 1 && p.negative.size() == 1 && p.positive[0] == p.negative[0];
}

std::string label_text(const LevelTree& tree, int v)
{
    std::vector<int> plus = tree.lambda_plus[v], minus = tree.lambda_minus[v];
    std::sort(plus.begin(), plus.end());
    std::sort(minus.begin(), minus.end());
    std::string s;
    for (int k : plus)
        s += (s.empty() ? "+" : ",+") + std::to_string(k);
    for (int k : minus)
        s += (s.empty() ? "-" : ",-") + std::to_string(k);
    return s;
}

// Ranks a key vector into dense integer colors.
template <typename Key>
std::vector<int> rank_keys(const std::vector<Key>& keys)
{
    std::vector<Key> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i)
        out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
    return out;
}

}  // namespace

EdgeMultiplicities derive_edge_multiplicities(const LevelTree& tree, const MultiplicityProfile& profile)
{
    if (!is_tree(tree))
        throw PreconditionError("edge multiplicities need a tree");
    if (!balanced(profile))
        throw PreconditionError("edge multiplicities need a balanced profile");

    const int n = tree.vertex_count;
    std::vector<long> excess(n);
    std::vector<std::vector<int>> adj(n);
    for (int v = 0; v < n; ++v)
        excess[v] = signed_excess(tree, profile, v);
    for (auto [a, b] : tree.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }

    EdgeMultiplicities mult;
    std::vector<int> degree(n);
    std::vector<bool> removed(n, false);
    std::deque<int> leaves;
    for (int v = 0; v < n; ++v) {
        degree[v] = static_cast<int>(adj[v].size());
        if (degree[v] == 1)
            leaves.push_back(v);
    }
    int remaining = n;
    while (remaining > 1) {
        const int v = leaves.front();
        leaves.pop_front();
        int u = -1;
        for (int w : adj[v])
            if (!removed[w])
                u = w;
        mult[{v, u}] = -excess[v];
        mult[{u, v}] = excess[v];
        excess[u] += excess[v];
        removed[v] = true;
        --remaining;
        if (--degree[u] == 1)
            leaves.push_back(u);
    }
    for (int v = 0; v < n; ++v)
        if (!removed[v] && excess[v] != 0)
            throw InvariantViolation("vertex balance inconsistent on a tree with a balanced profile");
    return mult;
}

StratumValidation validate_stratum(const LevelTree& tree, const MultiplicityProfile& profile)
{
    StratumValidation out;
    auto fail = [&](std::string msg) {
        out.valid = false;
        out.violations.push_back(std::move(msg));
    };
    const int n = tree.vertex_count;
    if (tree.lambda_plus.size() != static_cast<std::size_t>(n) ||
        tree.lambda_minus.size() != static_cast<std::size_t>(n) || tree.levels.size() != static_cast<std::size_t>(n)) {
        fail("per-vertex data has the wrong size");
        return out;
    }
    if (!is_tree(tree)) {
        fail("(T,E) is not a tree");
        return out;
    }
    const int L = tree.level_count();
    std::set<int> used_levels(tree.levels.begin(), tree.levels.end());
    if (*used_levels.begin() < 1 || static_cast<int>(used_levels.size()) != L)
        fail("level map is not surjective onto 1..L");
    if (tree.base_level && (*tree.base_level < 1 || *tree.base_level > L))
        fail("base level outside 1..L");

    auto check_partition = [&](const std::vector<std::vector<int>>& parts, std::size_t count, char sign) {
        std::vector<int> seen(count + 1, 0);
        for (const auto& part : parts)
            for (int k : part) {
                if (k < 1 || static_cast<std::size_t>(k) > count) {
                    fail(std::string("puncture label ") + sign + std::to_string(k) + " out of range");
                    continue;
                }
                ++seen[k];
            }
        for (std::size_t k = 1; k <= count; ++k)
            if (seen[k] != 1)
                fail(std::string("puncture ") + sign + std::to_string(k) + " assigned " + std::to_string(seen[k]) +
                     " times");
    };
    check_partition(tree.lambda_plus, profile.positives().size(), '+');
    check_partition(tree.lambda_minus, profile.negatives().size(), '-');
    if (!balanced(profile))
        fail("profile is not balanced");
    if (!out.valid)
        return out;

    const auto mult = derive_edge_multiplicities(tree, profile);
    for (auto [a, b] : tree.edges) {
        const long m = mult.at({a, b});
        const int la = tree.levels[a], lb = tree.levels[b];
        if (std::abs(la - lb) > 1)
            fail("edge " + std::to_string(a) + "-" + std::to_string(b) + " skips a level");
        if (m == 0 && la != lb)
            fail("edge " + std::to_string(a) + "-" + std::to_string(b) + " has multiplicity 0 across levels");
        if (m > 0 && !(la < lb))
            fail("edge " + std::to_string(a) + "-" + std::to_string(b) + " is a positive puncture of " +
                 std::to_string(a) + " but does not go up a level");
        if (m < 0 && !(la > lb))
            fail("edge " + std::to_string(a) + "-" + std::to_string(b) + " is a negative puncture of " +
                 std::to_string(a) + " but does not go down a level");
    }

    int nodes = 0;
    for (auto [a, b] : tree.edges)
        if (tree.levels[a] == tree.levels[b])
            ++nodes;
    const bool boundary = L >= 2 || nodes > 0;

    std::vector<bool> level_has_noncyl(L + 1, false);
    for (int v = 0; v < n; ++v) {
        const auto p = punctures_of(tree, profile, mult, v);
        if (p.total() < 2)
            fail("component " + std::to_string(v) + " has fewer than two punctures");
        if (p.positive.empty() || p.negative.empty())
            fail("component " + std::to_string(v) + " lacks a positive or a negative puncture");
        if (!cylindrical(p))
            level_has_noncyl[tree.levels[v]] = true;
        if (!tree.base_level && boundary && p.total() >= profile.punctures())
            fail("component " + std::to_string(v) + " carries " + std::to_string(p.total()) +
                 " punctures, not fewer than n = " + std::to_string(profile.punctures()));
    }
    for (int l = 1; l <= L; ++l)
        if (!level_has_noncyl[l] && !(tree.base_level && *tree.base_level == l))
            fail("level " + std::to_string(l) + " consists of trivial cylinders only");
    return out;
}

bool StratumSummary::is_cylindrical(int vertex) const
{
    const auto& p = component_profiles.at(vertex);
    return p.positives().size() == 1 && p.negatives().size() == 1;
}

std::vector<int> StratumSummary::vertices_on_level(int level) const
{
    std::vector<int> out;
    for (int v = 0; v < tree.vertex_count; ++v)
        if (tree.levels[v] == level)
            out.push_back(v);
    return out;
}

StratumSummary summarize_stratum(const LevelTree& tree, const MultiplicityProfile& profile)
{
    const auto check = validate_stratum(tree, profile);
    if (!check.valid) {
        std::string msg = "invalid stratum:";
        for (const auto& v : check.violations)
            msg += " " + v + ";";
        throw ValidationError(msg);
    }
    StratumSummary s;
    s.tree = tree;
    s.edge_mult = derive_edge_multiplicities(tree, profile);
    s.level_count = tree.level_count();
    for (auto [a, b] : tree.edges) {
        if (tree.levels[a] == tree.levels[b])
            ++s.node_count;
        else
            s.fiber_group_order *= std::abs(s.edge_mult.at({a, b}));
    }
    s.codim = s.level_count - 1 + 2 * s.node_count;
    for (int v = 0; v < tree.vertex_count; ++v) {
        auto p = punctures_of(tree, profile, s.edge_mult, v);
        s.component_profiles.emplace_back(p.positive, p.negative, profile.orbit());
    }
    s.canonical = canonical_form(tree, s.edge_mult);
    return s;
}

int codimension(const StratumSummary& stratum)
{
    return stratum.level_count - 1 + 2 * stratum.node_count;
}

long fiber_group_order(const StratumSummary& stratum)
{
    long order = 1;
    for (auto [a, b] : stratum.tree.edges)
        if (stratum.tree.levels[a] != stratum.tree.levels[b])
            order *= std::abs(stratum.edge_mult.at({a, b}));
    return order;
}

std::pair<long, long> marker_count(const MultiplicityProfile& profile)
{
    long plus = 1, minus = 1;
    for (int k : profile.positives())
        plus *= k;
    for (int k : profile.negatives())
        minus *= k;
    return {plus, minus};
}

std::string canonical_form(const LevelTree& tree, const EdgeMultiplicities& mult)
{
    const int n = tree.vertex_count;
    std::vector<std::vector<std::pair<int, long>>> adj(n);
    for (auto [a, b] : tree.edges) {
        const long m = std::abs(mult.at({a, b}));
        adj[a].push_back({b, m});
        adj[b].push_back({a, m});
    }

    using Key = std::tuple<int, std::string, std::vector<long>>;
    std::vector<Key> keys(n);
    for (int v = 0; v < n; ++v) {
        std::vector<long> inc;
        for (auto [u, m] : adj[v])
            inc.push_back(m);
        std::sort(inc.begin(), inc.end());
        keys[v] = {tree.levels[v], label_text(tree, v), inc};
    }
    std::vector<int> color = rank_keys(keys);

    // Color refinement; on a tree the stable classes are automorphism orbits, so individualizing any
    // member of a tied class yields the same encoding.
    auto refine = [&]() {
        for (;;) {
            std::vector<std::pair<int, std::vector<std::pair<int, long>>>> rk(n);
            for (int v = 0; v < n; ++v) {
                std::vector<std::pair<int, long>> nb;
                for (auto [u, m] : adj[v])
                    nb.push_back({color[u], m});
                std::sort(nb.begin(), nb.end());
                rk[v] = {color[v], nb};
            }
            auto next = rank_keys(rk);
            const auto classes = [](const std::vector<int>& c) { return std::set<int>(c.begin(), c.end()).size(); };
            const bool stable = classes(next) == classes(color);
            color = std::move(next);
            if (stable)
                return;
        }
    };
    refine();
    for (;;) {
        std::map<int, std::vector<int>> classes;
        for (int v = 0; v < n; ++v)
            classes[color[v]].push_back(v);
        auto tied = std::find_if(classes.begin(), classes.end(), [](const auto& c) { return c.second.size() > 1; });
        if (tied == classes.end())
            break;
        const int chosen = tied->second.front();
        std::vector<std::pair<int, int>> split(n);
        for (int v = 0; v < n; ++v)
            split[v] = {color[v], v == chosen ? 0 : 1};
        color = rank_keys(split);
        refine();
    }

    std::vector<int> order(n);
    for (int v = 0; v < n; ++v)
        order[color[v]] = v;
    std::ostringstream os;
    os << "v=[";
    for (int i = 0; i < n; ++i)
        os << (i ? ";" : "") << 'L' << tree.levels[order[i]] << '(' << label_text(tree, order[i]) << ')';
    os << "] e=[";
    std::vector<std::tuple<int, int, long>> edges;
    for (auto [a, b] : tree.edges) {
        int ia = color[a], ib = color[b];
        if (ia > ib)
            std::swap(ia, ib);
        edges.emplace_back(ia, ib, std::abs(mult.at({a, b})));
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [a, b, m] = edges[i];
        os << (i ? ";" : "") << a << '-' << b << ':' << m;
    }
    os << ']';
    if (tree.base_level)
        os << " base=" << *tree.base_level;
    return os.str();
}

ParsedStratum parse_canonical(std::string_view text)
{
    auto bad = [&]() { return ValidationError("malformed stratum encoding '" + std::string(text) + "'"); };
    auto take_bracket = [&](std::string_view prefix, std::size_t from) {
        auto p = text.find(prefix, from);
        if (p == std::string_view::npos)
            throw bad();
        auto open = p + prefix.size();
        auto close = text.find(']', open);
        if (close == std::string_view::npos)
            throw bad();
        return std::pair{text.substr(open, close - open), close};
    };
    auto split = [](std::string_view s, char sep) {
        std::vector<std::string_view> out;
        if (s.empty())
            return out;
        std::size_t start = 0;
        for (;;) {
            auto p = s.find(sep, start);
            out.push_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
            if (p == std::string_view::npos)
                return out;
            start = p + 1;
        }
    };
    auto to_int = [&](std::string_view s) {
        if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit))
            throw bad();
        return std::stol(std::string(s));
    };

    auto [vpart, vend] = take_bracket("v=[", 0);
    auto [epart, eend] = take_bracket("e=[", vend);
    ParsedStratum out;
    for (auto item : split(vpart, ';')) {
        if (item.size() < 4 || item[0] != 'L' || item.back() != ')')
            throw bad();
        auto open = item.find('(');
        if (open == std::string_view::npos)
            throw bad();
        out.tree.levels.push_back(static_cast<int>(to_int(item.substr(1, open - 1))));
        std::vector<int> plus, minus;
        for (auto lab : split(item.substr(open + 1, item.size() - open - 2), ',')) {
            if (lab.size() < 2)
                throw bad();
            const int k = static_cast<int>(to_int(lab.substr(1)));
            if (lab[0] == '+')
                plus.push_back(k);
            else if (lab[0] == '-')
                minus.push_back(k);
            else
                throw bad();
        }
        out.tree.lambda_plus.push_back(plus);
        out.tree.lambda_minus.push_back(minus);
    }
    out.tree.vertex_count = static_cast<int>(out.tree.levels.size());
    for (auto item : split(epart, ';')) {
        auto dash = item.find('-');
        auto colon = item.find(':');
        if (dash == std::string_view::npos || colon == std::string_view::npos || colon < dash)
            throw bad();
        const int a = static_cast<int>(to_int(item.substr(0, dash)));
        const int b = static_cast<int>(to_int(item.substr(dash + 1, colon - dash - 1)));
        if (a >= out.tree.vertex_count || b >= out.tree.vertex_count)
            throw bad();
        out.tree.edges.push_back({a, b});
        out.edge_abs_mult.push_back(to_int(item.substr(colon + 1)));
    }
    auto base = text.find("base=", eend);
    if (base != std::string_view::npos)
        out.tree.base_level = static_cast<int>(to_int(text.substr(base + 5)));
    return out;
}

namespace {

// Restricted growth strings: every set partition of {1..count} exactly once.
std::vector<std::vector<std::vector<int>>> set_partitions(int count)
{
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<int> rgs(count, 0);
    auto rec = [&](auto&& self, int i, int blocks) -> void {
        if (i == count) {
            std::vector<std::vector<int>> parts(blocks);
            for (int k = 0; k < count; ++k)
                parts[rgs[k]].push_back(k + 1);
            out.push_back(std::move(parts));
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            rgs[i] = b;
            self(self, i + 1, std::max(blocks, b + 1));
        }
    };
    rec(rec, 0, 0);
    return out;
}

// Spanning trees of the complete bipartite graph K_{a,b} (top vertices 0..a-1, bottom a..a+b-1).
std::vector<std::vector<std::pair<int, int>>> bipartite_spanning_trees(int a, int b)
{
    std::vector<std::pair<int, int>> all;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            all.push_back({i, a + j});
    const int need = a + b - 1;
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<std::pair<int, int>> chosen;
    std::vector<int> parent(a + b);
    auto rec = [&](auto&& self, std::size_t next) -> void {
        if (static_cast<int>(chosen.size()) == need) {
            out.push_back(chosen);
            return;
        }
        if (static_cast<int>(all.size() - next) < need - static_cast<int>(chosen.size()))
            return;
        for (std::size_t e = next; e < all.size(); ++e) {
            std::iota(parent.begin(), parent.end(), 0);
            auto find = [&](int x) {
                while (parent[x] != x)
                    x = parent[x];
                return x;
            };
            bool acyclic = true;
            chosen.push_back(all[e]);
            for (auto [u, v] : chosen) {
                int ru = find(u), rv = find(v);
                if (ru == rv) {
                    acyclic = false;
                    break;
                }
                parent[ru] = rv;
            }
            if (acyclic)
                self(self, e + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace

namespace {

std::vector<StratumSummary> enumerate_uncached(const MultiplicityProfile& profile)
{
    std::vector<StratumSummary> out;
    if (profile.punctures() < 3)
        return out;

    std::set<std::string> seen;
    const auto top_parts = set_partitions(static_cast<int>(profile.positives().size()));
    const auto bottom_parts = set_partitions(static_cast<int>(profile.negatives().size()));
    for (const auto& top : top_parts) {
        for (const auto& bottom : bottom_parts) {
            const int a = static_cast<int>(top.size());
            const int b = static_cast<int>(bottom.size());
            for (const auto& edges : bipartite_spanning_trees(a, b)) {
                LevelTree tree;
                tree.vertex_count = a + b;
                tree.edges = edges;
                tree.lambda_plus.assign(a + b, {});
                tree.lambda_minus.assign(a + b, {});
                tree.levels.assign(a + b, 1);
                for (int i = 0; i < a; ++i) {
                    tree.lambda_plus[i] = top[i];
                    tree.levels[i] = 2;
                }
                for (int j = 0; j < b; ++j)
                    tree.lambda_minus[a + j] = bottom[j];
                if (!validate_stratum(tree, profile).valid)
                    continue;
                const auto canonical = canonical_form(tree, derive_edge_multiplicities(tree, profile));
                if (seen.insert(canonical).second)
                    out.push_back(summarize_stratum(parse_canonical(canonical).tree, profile));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.canonical < y.canonical; });
    return out;
}

}  // namespace

const std::vector<StratumSummary>& enumerate_codim1(const MultiplicityProfile& profile)
{
    if (!balanced(profile))
        throw PreconditionError("enumerate_codim1 requires a balanced profile");
    static std::mutex mutex;
    static std::map<std::string, std::vector<StratumSummary>> cache;
    const auto key = profile.to_string();
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    auto out = enumerate_uncached(profile);
    std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace orbicover
