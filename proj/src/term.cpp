#include "eppe/term.hpp"

#include "eppe/errors.hpp"

#include <algorithm>
#include <functional>

namespace eppe {

struct Term::Node {
    Kind kind;
    Integer value;
    std::string name;
    std::vector<Term> kids;
};

Term::Term()
{
    static const Term zero = constant(Integer(0));
    node_ = zero.node_;
}

Term::Term(long value) : Term(constant(Integer(value))) {}

Term::Term(const Integer& value) : Term(constant(value)) {}

Term Term::constant(const Integer& value)
{
    if (value < 0)
        throw InvalidArgument("term constants are natural numbers");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->value = value;
    return Term(std::shared_ptr<const Node>(std::move(n)));
}

Term Term::var(std::string name)
{
    if (name.empty())
        throw InvalidArgument("empty variable name");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->name = std::move(name);
    return Term(std::shared_ptr<const Node>(std::move(n)));
}

Term Term::sum(std::vector<Term> terms)
{
    if (terms.empty())
        throw InvalidArgument("empty sum");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    n->kids = std::move(terms);
    return Term(std::shared_ptr<const Node>(std::move(n)));
}

Term Term::product(std::vector<Term> terms)
{
    if (terms.empty())
        throw InvalidArgument("empty product");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Product;
    n->kids = std::move(terms);
    return Term(std::shared_ptr<const Node>(std::move(n)));
}

Term Term::difference(Term lhs, Term rhs)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Difference;
    n->kids = {std::move(lhs), std::move(rhs)};
    return Term(std::shared_ptr<const Node>(std::move(n)));
}

Term Term::power(Term base, Term exponent)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Power;
    n->kids = {std::move(base), std::move(exponent)};
    return Term(std::shared_ptr<const Node>(std::move(n)));
}

Term::Kind Term::kind() const { return node_->kind; }

const Integer& Term::value() const { return node_->value; }

const std::string& Term::name() const { return node_->name; }

std::span<const Term> Term::children() const { return node_->kids; }

bool Term::is_const(long v) const { return is_const() && node_->value == v; }

bool operator==(const Term& a, const Term& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case Term::Kind::Const:
        return a.value() == b.value();
    case Term::Kind::Var:
        return a.name() == b.name();
    default:
        break;
    }
    auto ka = a.children();
    auto kb = b.children();
    return std::equal(ka.begin(), ka.end(), kb.begin(), kb.end());
}

Term var(std::string name) { return Term::var(std::move(name)); }

Term pow(Term base, Term exponent) { return Term::power(std::move(base), std::move(exponent)); }

Term operator+(const Term& a, const Term& b)
{
    if (a.kind() == Term::Kind::Sum) {
        std::vector<Term> kids(a.children().begin(), a.children().end());
        kids.push_back(b);
        return Term::sum(std::move(kids));
    }
    return Term::sum({a, b});
}

Term operator*(const Term& a, const Term& b)
{
    if (a.kind() == Term::Kind::Product) {
        std::vector<Term> kids(a.children().begin(), a.children().end());
        kids.push_back(b);
        return Term::product(std::move(kids));
    }
    return Term::product({a, b});
}

Term operator-(const Term& a, const Term& b) { return Term::difference(a, b); }

Term plus_const(const Term& t, long c)
{
    if (c == 0)
        return t;
    if (t.is_const())
        return Term(Integer(t.value() + c));
    if (t.kind() == Term::Kind::Sum) {
        auto kids = t.children();
        if (kids.back().is_const()) {
            Integer r = kids.back().value() + c;
            if (r >= 0) {
                std::vector<Term> out(kids.begin(), kids.end());
                if (r == 0)
                    out.pop_back();
                else
                    out.back() = Term(r);
                return out.size() == 1 ? out.front() : Term::sum(std::move(out));
            }
        }
    }
    if (t.kind() == Term::Kind::Difference && t.children()[1].is_const()) {
        Integer r = t.children()[1].value() - c;
        if (r > 0)
            return t.children()[0] - Term(r);
        if (r == 0)
            return t.children()[0];
        return t.children()[0] + Term(Integer(-r));
    }
    if (c < 0)
        return t - Term(-c);
    return t + Term(c);
}

namespace {

void check_bits(const Integer& v, const EvalLimits& limits)
{
    if (v != 0 && mpz_sizeinbase(v.get_mpz_t(), 2) > limits.max_bits)
        throw BudgetExceeded("intermediate value exceeds " + std::to_string(limits.max_bits) +
                             " bits");
}

Integer eval_power(const Integer& base, const Integer& exp, const EvalLimits& limits)
{
    if (exp < 0)
        throw NegativeExponent("negative exponent " + exp.get_str());
    if (exp == 0)
        return 1;
    if (base == 0 || base == 1)
        return base;
    if (base == -1)
        return mpz_odd_p(exp.get_mpz_t()) ? Integer(-1) : Integer(1);
    std::size_t base_bits = mpz_sizeinbase(base.get_mpz_t(), 2);
    if (!exp.fits_ulong_p())
        throw BudgetExceeded("exponent too large: " + exp.get_str());
    unsigned long e = exp.get_ui();
    // |base|^e has at least (bits-1)*e + 1 bits.
    if ((base_bits - 1) * static_cast<unsigned long long>(e) + 1 > limits.max_bits)
        throw BudgetExceeded("power exceeds " + std::to_string(limits.max_bits) + " bits");
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    check_bits(r, limits);
    return r;
}

} // namespace

Integer eval_term(const Term& t, const Assignment& env, const EvalLimits& limits)
{
    switch (t.kind()) {
    case Term::Kind::Const:
        return t.value();
    case Term::Kind::Var: {
        auto it = env.find(t.name());
        if (it == env.end())
            throw UnboundVariable(t.name());
        return it->second;
    }
    case Term::Kind::Sum: {
        Integer acc = 0;
        for (const auto& k : t.children())
            acc += eval_term(k, env, limits);
        check_bits(acc, limits);
        return acc;
    }
    case Term::Kind::Product: {
        Integer acc = 1;
        for (const auto& k : t.children()) {
            acc *= eval_term(k, env, limits);
            if (acc == 0)
                return acc;
            check_bits(acc, limits);
        }
        return acc;
    }
    case Term::Kind::Difference:
        return eval_term(t.children()[0], env, limits) - eval_term(t.children()[1], env, limits);
    case Term::Kind::Power:
        return eval_power(eval_term(t.children()[0], env, limits),
                          eval_term(t.children()[1], env, limits), limits);
    }
    return 0;
}

void collect_vars(const Term& t, std::set<std::string>& out)
{
    if (t.is_var()) {
        out.insert(t.name());
        return;
    }
    for (const auto& k : t.children())
        collect_vars(k, out);
}

std::set<std::string> free_vars(const Term& t)
{
    std::set<std::string> out;
    collect_vars(t, out);
    return out;
}

bool mentions(const Term& t, const std::string& name)
{
    if (t.is_var())
        return t.name() == name;
    for (const auto& k : t.children())
        if (mentions(k, name))
            return true;
    return false;
}

std::size_t node_count(const Term& t)
{
    std::size_t n = 1;
    for (const auto& k : t.children())
        n += node_count(k);
    return n;
}

std::size_t power_nesting(const Term& t)
{
    std::size_t deepest = 0;
    for (const auto& k : t.children())
        deepest = std::max(deepest, power_nesting(k));
    return t.kind() == Term::Kind::Power ? deepest + 1 : deepest;
}

Term substitute(const Term& t, const std::map<std::string, Term>& subs)
{
    switch (t.kind()) {
    case Term::Kind::Const:
        return t;
    case Term::Kind::Var: {
        auto it = subs.find(t.name());
        return it == subs.end() ? t : it->second;
    }
    case Term::Kind::Sum:
    case Term::Kind::Product: {
        std::vector<Term> kids;
        kids.reserve(t.children().size());
        for (const auto& k : t.children())
            kids.push_back(substitute(k, subs));
        return t.kind() == Term::Kind::Sum ? Term::sum(std::move(kids))
                                           : Term::product(std::move(kids));
    }
    case Term::Kind::Difference:
        return Term::difference(substitute(t.children()[0], subs),
                                substitute(t.children()[1], subs));
    case Term::Kind::Power:
        return Term::power(substitute(t.children()[0], subs), substitute(t.children()[1], subs));
    }
    return t;
}

Term rename(const Term& t, const std::map<std::string, std::string>& names)
{
    std::map<std::string, Term> subs;
    for (const auto& [from, to] : names)
        subs.emplace(from, Term::var(to));
    return substitute(t, subs);
}

Term square(const Term& t) { return Term::power(t, Term(2)); }

Term sum_of_squares(std::span<const Term> terms)
{
    if (terms.empty())
        throw InvalidArgument("sum_of_squares of an empty list");
    if (terms.size() == 1)
        return square(terms.front());
    std::vector<Term> sq;
    sq.reserve(terms.size());
    for (const auto& t : terms)
        sq.push_back(square(t));
    return Term::sum(std::move(sq));
}

bool syntactically_nonnegative(const Term& t)
{
    switch (t.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Var:
        return true;
    case Term::Kind::Power: {
        const Term& e = t.children()[1];
        if (e.is_const() && e.value() % 2 == 0)
            return true;
        return syntactically_nonnegative(t.children()[0]);
    }
    case Term::Kind::Sum:
    case Term::Kind::Product:
        return std::all_of(t.children().begin(), t.children().end(), syntactically_nonnegative);
    case Term::Kind::Difference:
        return false;
    }
    return false;
}

} // namespace eppe
