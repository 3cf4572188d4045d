#include "orbicover/graded_poisson.hpp"

#include "orbicover/errors.hpp"

#include <algorithm>
#include <sstream>

namespace orbicover {

Truncation parse_truncation(std::string_view text, const Truncation& base)
{
    Truncation t = base;
    std::size_t start = 0;
    while (start < text.size()) {
        auto comma = text.find(',', start);
        auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size())
            throw ValidationError("malformed truncation '" + std::string(text) + "', expected e.g. T=3,W=4,K=2");
        const auto key = item.substr(0, eq);
        const auto value = item.substr(eq + 1);
        auto as_int = [&]() {
            const Rational r = parse_rational(value);
            if (denominator(r) != 1 || r < 0)
                throw ValidationError("truncation " + std::string(key) + " must be a nonnegative integer");
            return static_cast<int>(floor_to_long(r));
        };
        if (key == "T")
            t.max_action = parse_rational(value);
        else if (key == "W")
            t.max_word = as_int();
        else if (key == "K")
            t.max_t_degree = as_int();
        else
            throw ValidationError("unknown truncation key '" + std::string(key) + "'");
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return t;
}

GradingConvention GradingConvention::sft()
{
    return {"sft",
            [](const OrbitCatalog& c, const IteratedOrbit& g) { return c.cz(g) + c.half_dim() - 3; },
            [](const OrbitCatalog& c, const IteratedOrbit& g) { return -c.cz(g) + c.half_dim() - 3; }};
}

std::shared_ptr<const Algebra> Algebra::create(OrbitCatalog catalog, Truncation truncation,
                                               GradingConvention convention)
{
    return std::shared_ptr<const Algebra>(new Algebra(std::move(catalog), truncation, std::move(convention)));
}

Algebra::Algebra(OrbitCatalog catalog, Truncation truncation, GradingConvention convention)
    : catalog_(std::move(catalog)), truncation_(truncation), convention_(std::move(convention))
{
    if (truncation_.max_word < 0 || truncation_.max_t_degree < 0)
        throw PreconditionError("truncation bounds must be nonnegative");
    for (std::size_t i = 0; i < catalog_.orbits().size(); ++i) {
        const auto& orbit = catalog_.orbit(i);
        if (orbit.action <= 0)
            throw PreconditionError("orbit " + orbit.name + " has nonpositive action; the truncated algebra would be infinite");
        for (int k = 1; action_of(orbit, k) <= truncation_.max_action; ++k) {
            IteratedOrbit g{i, k};
            if (!catalog_.bad(g))
                iterates_.push_back(g);
        }
    }
    for (const auto& g : iterates_) {
        q_ids_[g] = static_cast<int>(generators_.size());
        generators_.push_back({GeneratorKind::Q, g, 0, convention_.q_degree(catalog_, g)});
    }
    for (const auto& g : iterates_)
        generators_.push_back({GeneratorKind::P, g, 0, convention_.p_degree(catalog_, g)});
    for (std::size_t f = 0; f < catalog_.forms().size(); ++f)
        generators_.push_back({GeneratorKind::T, {}, f, catalog_.forms()[f].degree - 2});
}

std::optional<int> Algebra::q_id(const IteratedOrbit& g) const
{
    auto it = q_ids_.find(g);
    if (it == q_ids_.end())
        return std::nullopt;
    return it->second;
}

std::optional<int> Algebra::p_id(const IteratedOrbit& g) const
{
    auto q = q_id(g);
    if (!q)
        return std::nullopt;
    return *q + static_cast<int>(iterates_.size());
}

int Algebra::t_id(std::size_t form) const
{
    if (form >= catalog_.forms().size())
        throw PreconditionError("no form with index " + std::to_string(form));
    return static_cast<int>(2 * iterates_.size() + form);
}

int Algebra::grade(const Monomial& m) const
{
    int d = 0;
    for (auto [g, e] : m.factors)
        d += generators_.at(g).degree * e;
    return d;
}

int Algebra::word_length(const Monomial& m) const
{
    int w = 0;
    for (auto [g, e] : m.factors)
        if (generators_.at(g).kind != GeneratorKind::T)
            w += e;
    return w;
}

int Algebra::t_degree(const Monomial& m) const
{
    int k = 0;
    for (auto [g, e] : m.factors)
        if (generators_.at(g).kind == GeneratorKind::T)
            k += e;
    return k;
}

bool Algebra::within_truncation(const Monomial& m) const
{
    return word_length(m) <= truncation_.max_word && t_degree(m) <= truncation_.max_t_degree;
}

std::string Algebra::render(int id) const
{
    const auto& g = generators_.at(id);
    if (g.kind == GeneratorKind::T)
        return "t[" + catalog_.forms()[g.form].name + "]";
    std::string s = g.kind == GeneratorKind::Q ? "q[" : "p[";
    s += catalog_.orbit(g.orbit.orbit).name;
    if (g.orbit.multiplicity != 1)
        s += "^" + std::to_string(g.orbit.multiplicity);
    return s + "]";
}

std::string Algebra::render(const Monomial& m) const
{
    std::string s;
    for (auto [g, e] : m.factors) {
        if (!s.empty())
            s += "·";
        s += render(g);
        if (e != 1)
            s += "^" + std::to_string(e);
    }
    if (std::any_of(m.homology.begin(), m.homology.end(), [](long a) { return a != 0; })) {
        if (!s.empty())
            s += "·";
        s += "e[";
        for (std::size_t i = 0; i < m.homology.size(); ++i)
            s += (i ? "," : "") + std::to_string(m.homology[i]);
        s += "]";
    }
    return s.empty() ? "1" : s;
}

GradedElement Algebra::zero() const
{
    return GradedElement(shared_from_this());
}

GradedElement Algebra::constant(const Rational& c) const
{
    return monomial({}, c);
}

GradedElement Algebra::q(const IteratedOrbit& g) const
{
    auto id = q_id(g);
    if (!id)
        throw PreconditionError("no q generator for this iterate (bad or above the action bound)");
    return monomial({{{*id, 1}}, {}});
}

GradedElement Algebra::p(const IteratedOrbit& g) const
{
    auto id = p_id(g);
    if (!id)
        throw PreconditionError("no p generator for this iterate (bad or above the action bound)");
    return monomial({{{*id, 1}}, {}});
}

GradedElement Algebra::t(std::size_t form) const
{
    return monomial({{{t_id(form), 1}}, {}});
}

GradedElement Algebra::e(std::vector<long> homology) const
{
    return monomial({{}, std::move(homology)});
}

GradedElement Algebra::monomial(Monomial m, const Rational& c) const
{
    if (m.homology.empty())
        m.homology.assign(catalog_.h2_rank(), 0);
    // Build the product factor by factor so that Koszul signs of an unsorted input are applied.
    Monomial acc{{}, m.homology};
    Rational coeff = c;
    for (auto [g, e] : m.factors) {
        if (g < 0 || g >= static_cast<int>(generators_.size()) || e < 0)
            throw PreconditionError("invalid generator or exponent in monomial");
        for (int i = 0; i < e; ++i) {
            auto r = multiply_monomials(*this, acc, Monomial{{{g, 1}}, std::vector<long>(catalog_.h2_rank(), 0)});
            if (!r)
                return zero();
            acc = std::move(r->first);
            coeff *= r->second;
        }
    }
    GradedElement::Terms terms;
    terms.emplace(std::move(acc), coeff);
    return GradedElement(shared_from_this(), std::move(terms));
}

bool Algebra::operator==(const Algebra& other) const
{
    return catalog_ == other.catalog_ && truncation_ == other.truncation_ && convention_.name == other.convention_.name;
}

namespace {

void require_same(const GradedElement& a, const GradedElement& b)
{
    if (a.algebra_ptr() != b.algebra_ptr() && !(a.algebra() == b.algebra()))
        throw PreconditionError("elements belong to different algebras");
}

// Sign of moving one copy of generator `id` across the factors of m in [from, to).
int crossing_sign(const Algebra& alg, const Monomial& m, std::size_t from, std::size_t to, int id)
{
    if (!alg.generator(id).odd())
        return 1;
    int odd = 0;
    for (std::size_t i = from; i < to; ++i)
        if (alg.generator(m.factors[i].first).odd())
            odd += m.factors[i].second;
    return odd % 2 ? -1 : 1;
}

// d/dx_id acting from the right (right == true) or from the left.
std::optional<std::pair<Monomial, Rational>> derivative(const Algebra& alg, const Monomial& m, int id, bool right)
{
    auto it = std::find_if(m.factors.begin(), m.factors.end(), [&](const auto& f) { return f.first == id; });
    if (it == m.factors.end())
        return std::nullopt;
    const std::size_t pos = static_cast<std::size_t>(it - m.factors.begin());
    const int exponent = it->second;
    const int sign = right ? crossing_sign(alg, m, pos + 1, m.factors.size(), id) : crossing_sign(alg, m, 0, pos, id);
    Monomial out = m;
    if (--out.factors[pos].second == 0)
        out.factors.erase(out.factors.begin() + static_cast<long>(pos));
    return std::pair{std::move(out), Rational(sign * exponent)};
}

}  // namespace

std::optional<std::pair<Monomial, int>> multiply_monomials(const Algebra& algebra, const Monomial& a, const Monomial& b)
{
    int odd_crossings = 0;
    for (auto [ga, ea] : a.factors)
        for (auto [gb, eb] : b.factors)
            if (ga > gb && algebra.generator(ga).odd() && algebra.generator(gb).odd())
                odd_crossings += ea * eb;
    Monomial out;
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (j == b.factors.size() || (i < a.factors.size() && a.factors[i].first < b.factors[j].first))
            out.factors.push_back(a.factors[i++]);
        else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first)
            out.factors.push_back(b.factors[j++]);
        else {
            if (algebra.generator(a.factors[i].first).odd())
                return std::nullopt;
            out.factors.push_back({a.factors[i].first, a.factors[i].second + b.factors[j].second});
            ++i;
            ++j;
        }
    }
    const std::size_t rank = std::max(a.homology.size(), b.homology.size());
    out.homology.assign(rank, 0);
    for (std::size_t k = 0; k < a.homology.size(); ++k)
        out.homology[k] += a.homology[k];
    for (std::size_t k = 0; k < b.homology.size(); ++k)
        out.homology[k] += b.homology[k];
    return std::pair{std::move(out), odd_crossings % 2 ? -1 : 1};
}

GradedElement::GradedElement(std::shared_ptr<const Algebra> algebra, Terms terms) : algebra_(std::move(algebra))
{
    const auto rank = static_cast<std::size_t>(algebra_->catalog().h2_rank());
    for (auto& [m, c] : terms) {
        if (m.homology.size() != rank)
            throw PreconditionError("homology exponent has the wrong length");
        for (std::size_t i = 0; i < m.factors.size(); ++i) {
            const auto [g, e] = m.factors[i];
            if (g < 0 || g >= static_cast<int>(algebra_->generators().size()) || e < 1 ||
                (i > 0 && m.factors[i - 1].first >= g) || (e > 1 && algebra_->generator(g).odd()))
                throw PreconditionError("monomial is not in canonical form");
        }
        if (c != 0 && algebra_->within_truncation(m))
            terms_.emplace(m, c);
    }
}

std::string GradedElement::render() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        std::string term;
        const bool unit = m.factors.empty() && std::all_of(m.homology.begin(), m.homology.end(), [](long a) { return a == 0; });
        const Rational mag = c < 0 ? Rational(-c) : c;
        if (unit)
            term = to_string(mag);
        else if (mag == 1)
            term = algebra_->render(m);
        else
            term = to_string(mag) + "·" + algebra_->render(m);
        if (s.empty())
            s = (c < 0 ? "-" : "") + term;
        else
            s += (c < 0 ? " - " : " + ") + term;
    }
    return s;
}

GradedElement GradedElement::operator+(const GradedElement& other) const
{
    require_same(*this, other);
    Terms out = terms_;
    for (const auto& [m, c] : other.terms_) {
        auto& slot = out[m];
        slot += c;
        if (slot == 0)
            out.erase(m);
    }
    return GradedElement(algebra_, std::move(out));
}

GradedElement GradedElement::operator-() const
{
    Terms out;
    for (const auto& [m, c] : terms_)
        out.emplace(m, -c);
    return GradedElement(algebra_, std::move(out));
}

GradedElement GradedElement::operator-(const GradedElement& other) const
{
    return *this + (-other);
}

GradedElement GradedElement::operator*(const GradedElement& other) const
{
    return multiply(*this, other);
}

GradedElement operator*(const Rational& c, const GradedElement& f)
{
    GradedElement::Terms out;
    if (c != 0)
        for (const auto& [m, v] : f.terms_)
            out.emplace(m, c * v);
    return GradedElement(f.algebra_, std::move(out));
}

bool GradedElement::operator==(const GradedElement& other) const
{
    require_same(*this, other);
    return terms_ == other.terms_;
}

GradedElement multiply(const GradedElement& f, const GradedElement& g)
{
    require_same(f, g);
    const auto& alg = f.algebra();
    GradedElement::Terms out;
    for (const auto& [a, ca] : f.terms())
        for (const auto& [b, cb] : g.terms()) {
            auto r = multiply_monomials(alg, a, b);
            if (!r || !alg.within_truncation(r->first))
                continue;
            out[r->first] += ca * cb * r->second;
        }
    return GradedElement(f.algebra_ptr(), std::move(out));
}

GradedElement poisson_bracket(const GradedElement& f, const GradedElement& g)
{
    require_same(f, g);
    const auto& alg = f.algebra();
    const int n = static_cast<int>(alg.iterates().size());
    GradedElement::Terms out;
    for (const auto& [a, ca] : f.terms())
        for (auto [ga, ea] : a.factors) {
            const auto& gen = alg.generator(ga);
            if (gen.kind == GeneratorKind::T)
                continue;
            const int partner = gen.kind == GeneratorKind::P ? ga - n : ga + n;
            const Rational kappa = gen.orbit.multiplicity;
            Rational omega = -kappa;
            if (gen.kind == GeneratorKind::P && !gen.odd())
                omega = kappa;
            auto left = derivative(alg, a, ga, true);
            for (const auto& [b, cb] : g.terms()) {
                auto right = derivative(alg, b, partner, false);
                if (!right)
                    continue;
                auto r = multiply_monomials(alg, left->first, right->first);
                if (!r || !alg.within_truncation(r->first))
                    continue;
                out[r->first] += ca * cb * left->second * omega * right->second * r->second;
            }
        }
    return GradedElement(f.algebra_ptr(), std::move(out));
}

GradedElement differential(const GradedElement& h, const GradedElement& f)
{
    return poisson_bracket(h, f);
}

int grade(const Monomial& m, const Algebra& algebra)
{
    return algebra.grade(m);
}

}  // namespace orbicover
