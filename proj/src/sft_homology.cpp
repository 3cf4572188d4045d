#include "orbicover/sft_homology.hpp"

#include "orbicover/cover_moduli.hpp"
#include "orbicover/errors.hpp"
#include "orbicover/euler_certificate.hpp"

#include <algorithm>
#include <set>

namespace orbicover {

namespace {

bool has_p(const Algebra& alg, const Monomial& m)
{
    return std::any_of(m.factors.begin(), m.factors.end(),
                       [&](const auto& f) { return alg.generator(f.first).kind == GeneratorKind::P; });
}

// Multisets of `count` values drawn from 1..max in nonincreasing order.
void multisets(int count, int max, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(cur.size()) == count) {
        out.push_back(cur);
        return;
    }
    const int top = cur.empty() ? max : cur.back();
    for (int k = top; k >= 1; --k) {
        cur.push_back(k);
        multisets(count, max, cur, out);
        cur.pop_back();
    }
}

void record_branched_covers(const Algebra& alg, Hamiltonian& h)
{
    const auto& catalog = alg.catalog();
    const int w = alg.truncation().max_word;
    for (std::size_t o = 0; o < catalog.orbits().size(); ++o) {
        int max_k = 0;
        for (const auto& g : alg.iterates())
            if (g.orbit == o)
                max_k = std::max(max_k, g.multiplicity);
        if (max_k == 0)
            continue;
        for (int n = 3; n <= w; ++n)
            for (int np = 1; np < n; ++np) {
                std::vector<std::vector<int>> plus, minus;
                std::vector<int> cur;
                multisets(np, max_k, cur, plus);
                multisets(n - np, max_k, cur, minus);
                for (const auto& a : plus)
                    for (const auto& b : minus) {
                        MultiplicityProfile profile(a, b, o);
                        if (!balanced(profile))
                            continue;
                        Monomial m;
                        bool good = true;
                        for (int k : b) {
                            auto id = alg.q_id({o, k});
                            good = good && id;
                            if (id)
                                m.factors.push_back({*id, 1});
                        }
                        for (int k : a) {
                            auto id = alg.p_id({o, k});
                            good = good && id;
                            if (id)
                                m.factors.push_back({*id, 1});
                        }
                        if (!good)
                            continue;
                        const auto element = alg.monomial(m);
                        if (element.is_zero())
                            continue;
                        const Rational count = contribution(profile, catalog);
                        if (count != 0)
                            throw InvariantViolation("nonzero branched-cover contribution for " + profile.to_string());
                        h.provenance.emplace(element.terms().begin()->first,
                                             ProvenanceEntry{TermSource::BranchedCoverZero,
                                                             catalog.orbit(o).name + ";" + profile.to_string(), count});
                    }
            }
    }
}

}  // namespace

Hamiltonian hamiltonian_h0(const std::shared_ptr<const Algebra>& algebra)
{
    const auto& alg = *algebra;
    const auto& catalog = alg.catalog();
    Hamiltonian h{alg.zero(), {}, alg.zero()};
    for (const auto& g : alg.iterates())
        for (std::size_t i = 0; i < catalog.forms().size(); ++i) {
            if (catalog.forms()[i].degree != 1)
                continue;
            const Rational c = catalog.integral(g, i);
            if (c == 0)
                continue;
            const auto term = alg.monomial({{{*alg.p_id(g), 1}, {*alg.q_id(g), 1}, {alg.t_id(i), 1}}, {}}, c);
            if (term.is_zero())
                continue;
            h.element = h.element + term;
            const auto& [m, coeff] = *term.terms().begin();
            h.provenance.emplace(m, ProvenanceEntry{TermSource::OrbitCylinder, catalog.orbit(g.orbit).name, coeff});
        }
    record_branched_covers(alg, h);
    return h;
}

Rational action_filtration(const Monomial& m, const Algebra& algebra)
{
    Rational f = algebra.catalog().omega(m.homology);
    for (auto [g, e] : m.factors) {
        const auto& gen = algebra.generator(g);
        if (gen.kind == GeneratorKind::Q)
            f += e * algebra.catalog().action(gen.orbit);
        else if (gen.kind == GeneratorKind::P)
            f -= e * algebra.catalog().action(gen.orbit);
    }
    return f;
}

std::vector<Monomial> q_basis(const Algebra& alg)
{
    std::vector<int> qs, ts;
    for (int g = 0; g < static_cast<int>(alg.generators().size()); ++g) {
        const auto kind = alg.generator(g).kind;
        if (kind == GeneratorKind::Q)
            qs.push_back(g);
        else if (kind == GeneratorKind::T)
            ts.push_back(g);
    }
    std::vector<int> gens = qs;
    gens.insert(gens.end(), ts.begin(), ts.end());
    const auto& tr = alg.truncation();

    std::vector<Monomial> out;
    Monomial cur{{}, std::vector<long>(alg.catalog().h2_rank(), 0)};
    auto rec = [&](auto&& self, std::size_t i, int word, int tdeg) -> void {
        if (i == gens.size()) {
            out.push_back(cur);
            return;
        }
        self(self, i + 1, word, tdeg);
        const int g = gens[i];
        const bool is_t = alg.generator(g).kind == GeneratorKind::T;
        const int max_e = alg.generator(g).odd() ? 1 : (is_t ? tr.max_t_degree - tdeg : tr.max_word - word);
        for (int e = 1; e <= max_e; ++e) {
            if ((is_t && tdeg + e > tr.max_t_degree) || (!is_t && word + e > tr.max_word))
                break;
            cur.factors.push_back({g, e});
            self(self, i + 1, is_t ? word : word + e, is_t ? tdeg + e : tdeg);
            cur.factors.pop_back();
        }
    };
    rec(rec, 0, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

GradedElement FilteredComplex::basis_element(int j) const
{
    return algebra->monomial(basis.at(j));
}

GradedElement FilteredComplex::apply(const GradedElement& x) const
{
    GradedElement::Terms out;
    const auto dx = orbicover::differential(hamiltonian.total(), x);
    for (const auto& [m, c] : dx.terms())
        if (!has_p(*algebra, m))
            out.emplace(m, c);
    return GradedElement(algebra, std::move(out));
}

FilteredComplex ch_differential(const std::shared_ptr<const Algebra>& algebra)
{
    return ch_differential(algebra, hamiltonian_h0(algebra));
}

FilteredComplex ch_differential(const std::shared_ptr<const Algebra>& algebra, Hamiltonian hamiltonian)
{
    FilteredComplex c{algebra, std::move(hamiltonian), q_basis(*algebra), {}, {}, {}};
    for (int j = 0; j < static_cast<int>(c.basis.size()); ++j)
        c.index.emplace(c.basis[j], j);
    std::set<Rational> levels;
    for (int j = 0; j < static_cast<int>(c.basis.size()); ++j) {
        levels.insert(action_filtration(c.basis[j], *algebra));
        SparseVector column;
        const auto dx = c.apply(c.basis_element(j));
        for (const auto& [m, v] : dx.terms()) {
            auto it = c.index.find(m);
            if (it == c.index.end())
                throw InvariantViolation("differential leaves the truncated q-algebra: " + algebra->render(m));
            column.emplace(it->second, v);
        }
        c.differential.push_back(std::move(column));
    }
    c.filtration_levels.assign(levels.begin(), levels.end());
    return c;
}

std::string to_string(FiltrationClass c)
{
    switch (c) {
    case FiltrationClass::StrictlyDecreasing:
        return "strictly-decreasing";
    case FiltrationClass::Preserving:
        return "preserving";
    case FiltrationClass::Violating:
        return "violating";
    }
    return "?";
}

std::vector<std::pair<Monomial, FiltrationClass>> filtration_behavior(const FilteredComplex& complex)
{
    std::vector<std::pair<Monomial, FiltrationClass>> out;
    for (std::size_t j = 0; j < complex.basis.size(); ++j) {
        const Rational level = action_filtration(complex.basis[j], *complex.algebra);
        auto cls = FiltrationClass::StrictlyDecreasing;
        for (const auto& [i, v] : complex.differential[j]) {
            const Rational l = action_filtration(complex.basis[i], *complex.algebra);
            if (l > level) {
                cls = FiltrationClass::Violating;
                break;
            }
            if (l == level)
                cls = FiltrationClass::Preserving;
        }
        out.emplace_back(complex.basis[j], cls);
    }
    return out;
}

bool master_equation_holds(const Hamiltonian& h)
{
    const auto total = h.total();
    return poisson_bracket(total, total).is_zero();
}

bool differential_squares_to_zero(const FilteredComplex& complex)
{
    for (const auto& column : complex.differential) {
        SparseVector dd;
        for (const auto& [i, v] : column)
            axpy(dd, v, complex.differential[i]);
        if (!dd.empty())
            return false;
    }
    return true;
}

}  // namespace orbicover
