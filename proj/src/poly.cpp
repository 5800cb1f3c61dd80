#include "eppe/poly.hpp"

#include "eppe/errors.hpp"

#include <algorithm>
#include <set>

namespace eppe {

namespace {

Poly::Monomial mul_mono(const Poly::Monomial& a, const Poly::Monomial& b)
{
    Poly::Monomial out;
    out.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->first < j->first)) {
            out.push_back(*i++);
        } else if (i == a.end() || j->first < i->first) {
            out.push_back(*j++);
        } else {
            out.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

Poly Poly::constant(const Integer& c)
{
    Poly p;
    if (c != 0)
        p.terms_[{}] = c;
    return p;
}

Poly Poly::var(const std::string& name)
{
    Poly p;
    p.terms_[{{name, 1u}}] = 1;
    return p;
}

bool Poly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Integer Poly::constant_term() const
{
    auto it = terms_.find({});
    return it == terms_.end() ? Integer(0) : it->second;
}

unsigned Poly::degree_in(const std::string& name) const
{
    unsigned d = 0;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m)
            if (v == name)
                d = std::max(d, e);
    return d;
}

unsigned Poly::total_degree() const
{
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
        unsigned s = 0;
        for (const auto& [v, e] : m)
            s += e;
        d = std::max(d, s);
    }
    return d;
}

std::vector<std::string> Poly::variables() const
{
    std::set<std::string> vs;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m)
            vs.insert(v);
    return {vs.begin(), vs.end()};
}

void Poly::add_term(const Monomial& m, const Integer& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    Poly out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            out.add_term(mul_mono(ma, mb), ca * cb);
    return out;
}

Poly Poly::pow(unsigned e) const
{
    Poly result = constant(1);
    Poly base = *this;
    while (e) {
        if (e & 1u)
            result = result * base;
        e >>= 1u;
        if (e)
            base = base * base;
    }
    return result;
}

Integer Poly::eval(const Assignment& env) const
{
    Integer acc = 0;
    for (const auto& [m, c] : terms_) {
        Integer t = c;
        for (const auto& [v, e] : m) {
            auto it = env.find(v);
            if (it == env.end())
                throw UnboundVariable(v);
            Integer p;
            mpz_pow_ui(p.get_mpz_t(), it->second.get_mpz_t(), e);
            t *= p;
        }
        acc += t;
    }
    return acc;
}

Poly Poly::reduce_square(const std::string& name, const Poly& value) const
{
    Poly out;
    for (const auto& [m, c] : terms_) {
        Monomial rest;
        unsigned e = 0;
        for (const auto& ve : m) {
            if (ve.first == name)
                e = ve.second;
            else
                rest.push_back(ve);
        }
        Poly piece;
        if (e % 2 == 1)
            rest = mul_mono(rest, {{name, 1u}});
        piece.terms_[rest] = c;
        out += e >= 2 ? piece * value.pow(e / 2) : piece;
    }
    return out;
}

std::optional<std::vector<Integer>> Poly::univariate(const std::string& name) const
{
    std::vector<Integer> coeffs(degree_in(name) + 1, 0);
    for (const auto& [m, c] : terms_) {
        if (m.size() > 1 || (m.size() == 1 && m.front().first != name))
            return std::nullopt;
        coeffs[m.empty() ? 0 : m.front().second] += c;
    }
    return coeffs;
}

Term Poly::to_term() const
{
    std::vector<Term> pos;
    std::vector<Term> neg;
    for (const auto& [m, c] : terms_) {
        Integer mag = abs(c);
        std::vector<Term> factors;
        if (mag != 1 || m.empty())
            factors.emplace_back(mag);
        for (const auto& [v, e] : m)
            factors.push_back(e == 1 ? Term::var(v) : Term::power(Term::var(v), Term(long(e))));
        Term mono = factors.size() == 1 ? factors.front() : Term::product(std::move(factors));
        (c > 0 ? pos : neg).push_back(std::move(mono));
    }
    Term acc = pos.empty() ? Term(0) : pos.size() == 1 ? pos.front() : Term::sum(std::move(pos));
    for (auto& n : neg)
        acc = Term::difference(acc, n);
    return acc;
}

namespace {

constexpr unsigned kMaxSymbolicExponent = 4096;

struct Expander {
    const Assignment& known;
    const EvalLimits& limits;

    bool fully_known(const Term& t) const
    {
        if (t.is_var())
            return known.count(t.name()) != 0;
        for (const auto& k : t.children())
            if (!fully_known(k))
                return false;
        return true;
    }

    std::optional<Poly> run(const Term& t) const
    {
        if (fully_known(t))
            return Poly::constant(eval_term(t, known, limits));
        switch (t.kind()) {
        case Term::Kind::Const:
            return Poly::constant(t.value());
        case Term::Kind::Var:
            return Poly::var(t.name());
        case Term::Kind::Sum: {
            Poly acc;
            for (const auto& k : t.children()) {
                auto p = run(k);
                if (!p)
                    return std::nullopt;
                acc += *p;
            }
            return acc;
        }
        case Term::Kind::Product: {
            Poly acc = Poly::constant(1);
            for (const auto& k : t.children()) {
                auto p = run(k);
                if (!p)
                    return std::nullopt;
                acc = acc * *p;
                if (acc.is_zero())
                    return acc;
            }
            return acc;
        }
        case Term::Kind::Difference: {
            auto a = run(t.children()[0]);
            if (!a)
                return std::nullopt;
            auto b = run(t.children()[1]);
            if (!b)
                return std::nullopt;
            return *a - *b;
        }
        case Term::Kind::Power: {
            const Term& ex = t.children()[1];
            if (!fully_known(ex))
                return std::nullopt;
            Integer e = eval_term(ex, known, limits);
            if (e < 0)
                throw NegativeExponent("negative exponent " + e.get_str());
            if (e > kMaxSymbolicExponent)
                throw BudgetExceeded("symbolic exponent too large: " + e.get_str());
            auto b = run(t.children()[0]);
            if (!b)
                return std::nullopt;
            return b->pow(static_cast<unsigned>(e.get_ui()));
        }
        }
        return std::nullopt;
    }
};

} // namespace

std::optional<Poly> to_poly(const Term& t, const Assignment& known, const EvalLimits& limits)
{
    return Expander{known, limits}.run(t);
}

} // namespace eppe
