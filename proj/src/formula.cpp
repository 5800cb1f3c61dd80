#include "eppe/formula.hpp"

#include "eppe/errors.hpp"

#include <algorithm>

namespace eppe {

struct Formula::Node {
    Kind kind;
    Term term;
    std::vector<Formula> parts;
    std::vector<std::string> vars;
    std::string bound_var;
    bool strict = false;
};

Formula Formula::equation(Term t)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Equation;
    n->term = std::move(t);
    return Formula(std::move(n));
}

Formula Formula::conj(std::vector<Formula> parts)
{
    if (parts.empty())
        throw InvalidArgument("empty conjunction");
    auto n = std::make_shared<Node>();
    n->kind = Kind::And;
    n->parts = std::move(parts);
    return Formula(std::move(n));
}

Formula Formula::exists(std::vector<std::string> vars, Formula body)
{
    if (vars.empty())
        throw InvalidArgument("existential block without variables");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Exists;
    n->vars = std::move(vars);
    n->parts = {std::move(body)};
    return Formula(std::move(n));
}

Formula Formula::forall(std::string var, Term bound, bool strict, Formula body)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::ForallBounded;
    n->bound_var = std::move(var);
    n->term = std::move(bound);
    n->strict = strict;
    n->parts = {std::move(body)};
    return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const Term& Formula::term() const { return node_->term; }
const std::vector<Formula>& Formula::parts() const { return node_->parts; }
const std::vector<std::string>& Formula::vars() const { return node_->vars; }
const std::string& Formula::bound_var() const { return node_->bound_var; }
bool Formula::strict() const { return node_->strict; }
const Formula& Formula::body() const { return node_->parts.front(); }

bool operator==(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case Formula::Kind::Equation:
        return a.term() == b.term();
    case Formula::Kind::And:
        return a.parts() == b.parts();
    case Formula::Kind::Exists:
        return a.vars() == b.vars() && a.body() == b.body();
    case Formula::Kind::ForallBounded:
        return a.bound_var() == b.bound_var() && a.strict() == b.strict() &&
               a.term() == b.term() && a.body() == b.body();
    }
    return false;
}

namespace {

void free_vars_rec(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out)
{
    auto add_term = [&](const Term& t) {
        for (const auto& v : eppe::free_vars(t))
            if (!bound.count(v))
                out.insert(v);
    };
    switch (f.kind()) {
    case Formula::Kind::Equation:
        add_term(f.term());
        break;
    case Formula::Kind::And:
        for (const auto& p : f.parts())
            free_vars_rec(p, bound, out);
        break;
    case Formula::Kind::Exists: {
        std::vector<std::string> added;
        for (const auto& v : f.vars())
            if (bound.insert(v).second)
                added.push_back(v);
        free_vars_rec(f.body(), bound, out);
        for (const auto& v : added)
            bound.erase(v);
        break;
    }
    case Formula::Kind::ForallBounded: {
        add_term(f.term());
        bool inserted = bound.insert(f.bound_var()).second;
        free_vars_rec(f.body(), bound, out);
        if (inserted)
            bound.erase(f.bound_var());
        break;
    }
    }
}

void check_binding(const Formula& f, std::set<std::string>& bound)
{
    auto bind = [&](const std::string& v) {
        if (!bound.insert(v).second)
            throw InvalidArgument("variable bound twice on one path: " + v);
    };
    switch (f.kind()) {
    case Formula::Kind::Equation:
        return;
    case Formula::Kind::And:
        for (const auto& p : f.parts())
            check_binding(p, bound);
        return;
    case Formula::Kind::Exists:
        for (const auto& v : f.vars())
            bind(v);
        check_binding(f.body(), bound);
        for (const auto& v : f.vars())
            bound.erase(v);
        return;
    case Formula::Kind::ForallBounded:
        bind(f.bound_var());
        check_binding(f.body(), bound);
        bound.erase(f.bound_var());
        return;
    }
}

} // namespace

std::set<std::string> free_vars(const Formula& f)
{
    std::set<std::string> bound;
    std::set<std::string> out;
    free_vars_rec(f, bound, out);
    return out;
}

void validate(const Formula& f, const std::vector<std::string>& params)
{
    std::set<std::string> bound(params.begin(), params.end());
    if (bound.size() != params.size())
        throw InvalidArgument("duplicate parameter");
    check_binding(f, bound);
    for (const auto& v : free_vars(f))
        if (std::find(params.begin(), params.end(), v) == params.end())
            throw InvalidArgument("undeclared free variable: " + v);
}

Formula rename(const Formula& f, const std::map<std::string, std::string>& names)
{
    auto rn = [&](const std::string& v) {
        auto it = names.find(v);
        return it == names.end() ? v : it->second;
    };
    switch (f.kind()) {
    case Formula::Kind::Equation:
        return Formula::equation(rename(f.term(), names));
    case Formula::Kind::And: {
        std::vector<Formula> parts;
        for (const auto& p : f.parts())
            parts.push_back(rename(p, names));
        return Formula::conj(std::move(parts));
    }
    case Formula::Kind::Exists: {
        std::vector<std::string> vars;
        for (const auto& v : f.vars())
            vars.push_back(rn(v));
        return Formula::exists(std::move(vars), rename(f.body(), names));
    }
    case Formula::Kind::ForallBounded:
        return Formula::forall(rn(f.bound_var()), rename(f.term(), names), f.strict(),
                               rename(f.body(), names));
    }
    return f;
}

bool is_equational(const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::Equation:
        return true;
    case Formula::Kind::And:
        return std::all_of(f.parts().begin(), f.parts().end(), is_equational);
    case Formula::Kind::Exists:
        return is_equational(f.body());
    case Formula::Kind::ForallBounded:
        return false;
    }
    return false;
}

} // namespace eppe
