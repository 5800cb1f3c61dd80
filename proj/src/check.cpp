#include "eppe/check.hpp"

#include "eppe/errors.hpp"
#include "eppe/poly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace eppe {

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Holds:
        return "Holds";
    case Verdict::Fails:
        return "Fails";
    case Verdict::Unknown:
        return "Unknown";
    }
    return "?";
}

namespace {

// Zero-condition of a term split into conjunctions and disjunctions.
struct Goal {
    enum class Kind { Atom, And, Or } kind = Kind::And;
    Term atom;
    std::vector<Goal> kids;
    std::set<std::string> vars;
    std::set<std::string> exponents; // variables occurring in an exponent
};

void collect_exponents(const Term& t, std::set<std::string>& out)
{
    if (t.kind() == Term::Kind::Power) {
        auto e = free_vars(t.children()[1]);
        out.insert(e.begin(), e.end());
    }
    for (const auto& k : t.children())
        collect_exponents(k, out);
}

Goal decompose(const Term& t)
{
    Goal g;
    switch (t.kind()) {
    case Term::Kind::Const:
        if (t.value() == 0)
            return g;
        break;
    case Term::Kind::Power: {
        const Term& e = t.children()[1];
        if (e.is_const() && e.value() >= 1)
            return decompose(t.children()[0]);
        break;
    }
    case Term::Kind::Sum:
        if (std::all_of(t.children().begin(), t.children().end(), syntactically_nonnegative)) {
            for (const auto& k : t.children())
                g.kids.push_back(decompose(k));
            for (const auto& k : g.kids) {
                g.vars.insert(k.vars.begin(), k.vars.end());
                g.exponents.insert(k.exponents.begin(), k.exponents.end());
            }
            return g;
        }
        break;
    case Term::Kind::Product:
        g.kind = Goal::Kind::Or;
        for (const auto& k : t.children())
            g.kids.push_back(decompose(k));
        for (const auto& k : g.kids) {
            g.vars.insert(k.vars.begin(), k.vars.end());
            g.exponents.insert(k.exponents.begin(), k.exponents.end());
        }
        return g;
    default:
        break;
    }
    g.kind = Goal::Kind::Atom;
    g.atom = t;
    g.vars = free_vars(t);
    collect_exponents(t, g.exponents);
    return g;
}

struct SearchAbort {};

// Exact caps up to this size are enumerated before any blind choice.
constexpr long kSmallCap = 4096;

class Checker {
public:
    Checker(const Integer& bound, const CheckOptions& opts) : bound_(bound), opts_(opts) {}

    Verdict check(const Formula& f, Assignment& env)
    {
        switch (f.kind()) {
        case Formula::Kind::Equation:
            try {
                return eval_term(f.term(), env, opts_.limits) == 0 ? Verdict::Holds : Verdict::Fails;
            } catch (const BudgetExceeded&) {
                return Verdict::Unknown;
            }
        case Formula::Kind::And: {
            Verdict acc = Verdict::Holds;
            for (const auto& p : f.parts()) {
                Verdict v = check(p, env);
                if (v == Verdict::Fails)
                    return v;
                if (v == Verdict::Unknown)
                    acc = v;
            }
            return acc;
        }
        case Formula::Kind::ForallBounded:
            return check_forall(f, env);
        case Formula::Kind::Exists:
            return check_exists(f, env);
        }
        return Verdict::Unknown;
    }

    // Enumerates solutions of an equational block; `on_solution` returns true to stop.
    bool search(const std::vector<const Goal*>& goals, const std::vector<std::string>& unknowns,
                Assignment& env, const std::function<bool(Assignment&)>& on_solution)
    {
        tick();
        std::vector<std::string> assigned;
        auto undo = [&] {
            for (const auto& v : assigned)
                env.erase(v);
        };
        std::vector<const Goal*> pending = goals;
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<const Goal*> next;
            for (std::size_t i = 0; i < pending.size(); ++i) {
                const Goal* g = pending[i];
                if (g->kind == Goal::Kind::And) {
                    for (const auto& k : g->kids)
                        next.push_back(&k);
                    changed = true;
                    continue;
                }
                if (g->kind == Goal::Kind::Atom) {
                    if (!all_known(g->vars, env)) {
                        next.push_back(g);
                        continue;
                    }
                    if (!atom_zero(g->atom, env)) {
                        undo();
                        return false;
                    }
                    continue;
                }
                // Or node
                std::vector<const Goal*> open;
                bool satisfied = false;
                for (const auto& k : g->kids) {
                    int s = closed_status(k, env);
                    if (s == 1) {
                        satisfied = true;
                        break;
                    }
                    if (s == -1)
                        open.push_back(&k);
                }
                if (satisfied)
                    continue;
                if (open.empty()) {
                    undo();
                    return false;
                }
                if (open.size() == 1) {
                    next.push_back(open.front());
                    changed = true;
                } else {
                    next.push_back(g);
                }
            }
            pending = std::move(next);
            if (changed)
                continue;
            // Propagate atoms with a single unknown of degree one.
            for (std::size_t i = 0; i < pending.size(); ++i) {
                const Goal* g = pending[i];
                if (g->kind != Goal::Kind::Atom)
                    continue;
                std::string u;
                if (unknown_count(g->vars, env, &u) != 1)
                    continue;
                auto coeffs = univariate(g->atom, env, u);
                if (!coeffs || coeffs->size() > 2)
                    continue;
                if (coeffs->size() == 1) {
                    if ((*coeffs)[0] != 0) {
                        undo();
                        return false;
                    }
                    continue;
                }
                const Integer& a = (*coeffs)[1];
                const Integer& b = (*coeffs)[0];
                if (a == 0 || b % a != 0) {
                    undo();
                    return false;
                }
                Integer val = -b / a;
                if (val < 0 || val > bound_) {
                    if (val > bound_)
                        inexact_ = true;
                    undo();
                    return false;
                }
                env[u] = val;
                assigned.push_back(u);
                changed = true;
                break;
            }
        }

        bool stop = false;
        if (pending.empty()) {
            stop = finish(unknowns, env, on_solution);
            undo();
            return stop;
        }

        // Higher-degree atom in one unknown: branch over its roots.
        for (const Goal* g : pending) {
            if (g->kind != Goal::Kind::Atom)
                continue;
            std::string u;
            if (unknown_count(g->vars, env, &u) != 1)
                continue;
            auto coeffs = univariate(g->atom, env, u);
            if (!coeffs)
                continue;
            if (std::all_of(coeffs->begin(), coeffs->end(), [](const Integer& c) { return c == 0; })) {
                // vanishes for every value of u
                std::vector<const Goal*> rest;
                for (const Goal* h : pending)
                    if (h != g)
                        rest.push_back(h);
                stop = search(rest, unknowns, env, on_solution);
                undo();
                return stop;
            }
            for (const Integer& r : natural_roots(*coeffs)) {
                env[u] = r;
                stop = search(pending, unknowns, env, on_solution);
                env.erase(u);
                if (stop)
                    break;
            }
            undo();
            return stop;
        }

        // Disjunction: try each open branch.
        for (std::size_t i = 0; i < pending.size(); ++i) {
            const Goal* g = pending[i];
            if (g->kind != Goal::Kind::Or)
                continue;
            for (const auto& k : g->kids) {
                if (closed_status(k, env) == 0)
                    continue;
                std::vector<const Goal*> branch = pending;
                branch[i] = &k;
                stop = search(branch, unknowns, env, on_solution);
                if (stop)
                    break;
            }
            undo();
            return stop;
        }

        // An atom whose unknown part has one sign caps some unknown exactly.
        std::string cu;
        Integer cap;
        for (const Goal* g : pending) {
            if (g->kind != Goal::Kind::Atom)
                continue;
            std::string u;
            Integer c;
            if (natural_cap(g->atom, env, u, c) && (cu.empty() || c < cap)) {
                cu = u;
                cap = c;
            }
        }
        auto enumerate_cap = [&] {
            for (Integer val = 0; val <= cap && !stop; ++val) {
                env[cu] = val;
                stop = search(pending, unknowns, env, on_solution);
            }
            env.erase(cu);
            undo();
            return stop;
        };
        if (!cu.empty() && cap <= bound_ && cap <= kSmallCap)
            return enumerate_cap();

        // Otherwise enumerate one unknown of the atom with the fewest unknowns,
        // exponents first since fixing them leaves polynomial atoms. A large
        // exact cap still beats blind enumeration of a non-exponent.
        const Goal* best = nullptr;
        std::size_t best_count = 0;
        bool best_exp = false;
        for (const Goal* g : pending) {
            std::size_t c = unknown_count(g->vars, env, nullptr);
            bool e = unknown_count(g->exponents, env, nullptr) > 0;
            if (c > 0 && (!best || (e && !best_exp) || (e == best_exp && c < best_count))) {
                best = g;
                best_count = c;
                best_exp = e;
            }
        }
        if (!cu.empty() && cap <= bound_ && !best_exp)
            return enumerate_cap();
        if (!best) {
            undo();
            return false;
        }
        std::string u;
        for (const auto& v : best_exp ? best->exponents : best->vars)
            if (!env.count(v)) {
                u = v;
                break;
            }
        inexact_ = true;
        for (Integer val = 0; val <= bound_ && !stop; ++val) {
            env[u] = val;
            std::uint64_t hits = budget_hits_;
            stop = search(pending, unknowns, env, on_solution);
            // an exponent past the evaluation budget stays past it
            if (best_exp && budget_hits_ != hits)
                break;
        }
        env.erase(u);
        undo();
        return stop;
    }

    bool incomplete() const { return incomplete_; }

private:
    void tick()
    {
        ++nodes_;
        if (opts_.node_limit && nodes_ > *opts_.node_limit) {
            incomplete_ = true;
            throw SearchAbort{};
        }
    }

    static bool all_known(const std::set<std::string>& vars, const Assignment& env)
    {
        for (const auto& v : vars)
            if (!env.count(v))
                return false;
        return true;
    }

    static std::size_t unknown_count(const std::set<std::string>& vars, const Assignment& env,
                                     std::string* last)
    {
        std::size_t n = 0;
        for (const auto& v : vars)
            if (!env.count(v)) {
                ++n;
                if (last)
                    *last = v;
            }
        return n;
    }

    bool atom_zero(const Term& t, const Assignment& env)
    {
        try {
            return eval_term(t, env, opts_.limits) == 0;
        } catch (const BudgetExceeded&) {
            incomplete_ = true;
            inexact_ = true;
            ++budget_hits_;
            return false;
        }
    }

    // 1 satisfied, 0 violated, -1 undetermined.
    int closed_status(const Goal& g, const Assignment& env)
    {
        switch (g.kind) {
        case Goal::Kind::Atom:
            if (!all_known(g.vars, env))
                return -1;
            return atom_zero(g.atom, env) ? 1 : 0;
        case Goal::Kind::And: {
            int acc = 1;
            for (const auto& k : g.kids) {
                int s = closed_status(k, env);
                if (s == 0)
                    return 0;
                if (s == -1)
                    acc = -1;
            }
            return acc;
        }
        case Goal::Kind::Or: {
            int acc = 0;
            for (const auto& k : g.kids) {
                int s = closed_status(k, env);
                if (s == 1)
                    return 1;
                if (s == -1)
                    acc = -1;
            }
            return acc;
        }
        }
        return -1;
    }

    std::optional<std::vector<Integer>> univariate(const Term& t, const Assignment& env,
                                                   const std::string& u)
    {
        try {
            auto p = to_poly(t, env, opts_.limits);
            if (!p)
                return std::nullopt;
            return p->univariate(u);
        } catch (const BudgetExceeded&) {
            inexact_ = true;
            ++budget_hits_;
            return std::nullopt;
        }
    }

    // For K + sum c_i m_i with every c_i of the sign opposite to K, each
    // unknown u with a pure power term c u^e satisfies u <= |K|.
    bool natural_cap(const Term& t, const Assignment& env, std::string& u, Integer& cap)
    {
        std::optional<Poly> p;
        try {
            p = to_poly(t, env, opts_.limits);
        } catch (const BudgetExceeded&) {
            return false;
        }
        if (!p)
            return false;
        Integer k = p->constant_term();
        int sign = 0;
        for (const auto& [mono, c] : p->terms()) {
            if (mono.empty())
                continue;
            int s = c > 0 ? 1 : -1;
            if (sign != 0 && s != sign)
                return false;
            sign = s;
        }
        if (sign == 0 || (k != 0 && (k > 0) == (sign > 0)))
            return false;
        for (const auto& [mono, c] : p->terms())
            if (mono.size() == 1) {
                u = mono.front().first;
                cap = abs(k);
                return true;
            }
        return false;
    }

    std::vector<Integer> natural_roots(const std::vector<Integer>& c)
    {
        std::vector<Integer> roots;
        std::size_t deg = c.size() - 1;
        while (deg > 0 && c[deg] == 0)
            --deg;
        if (deg == 0)
            return roots;
        // Fujiwara bound on root magnitude.
        Integer lim = 0;
        for (std::size_t i = 1; i <= deg; ++i) {
            Integer q = abs(c[deg - i]) / abs(c[deg]) + 1;
            Integer root;
            mpz_root(root.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(i));
            if (root + 1 > lim)
                lim = root + 1;
        }
        lim = 2 * lim + 1;
        if (lim > bound_) {
            lim = bound_;
            inexact_ = true;
        }
        for (Integer r = 0; r <= lim; ++r) {
            Integer acc = 0;
            for (std::size_t i = deg + 1; i-- > 0;)
                acc = acc * r + c[i];
            if (acc == 0)
                roots.push_back(r);
        }
        return roots;
    }

    bool finish(const std::vector<std::string>& unknowns, Assignment& env,
                const std::function<bool(Assignment&)>& on_solution)
    {
        std::vector<std::string> fresh;
        for (const auto& u : unknowns)
            if (!env.count(u)) {
                env[u] = 0;
                fresh.push_back(u);
            }
        bool stop = on_solution(env);
        for (const auto& u : fresh)
            env.erase(u);
        return stop;
    }

    static bool can_fail(const Formula& f)
    {
        switch (f.kind()) {
        case Formula::Kind::Equation:
            return true;
        case Formula::Kind::And:
            return std::any_of(f.parts().begin(), f.parts().end(), can_fail);
        case Formula::Kind::Exists:
        case Formula::Kind::ForallBounded:
            return can_fail(f.body());
        }
        return true;
    }

    Verdict check_forall(const Formula& f, Assignment& env)
    {
        Integer n;
        try {
            n = eval_term(f.term(), env, opts_.limits);
        } catch (const BudgetExceeded&) {
            return Verdict::Unknown;
        }
        if (!f.strict())
            n += 1;
        const bool body_can_fail = can_fail(f.body());
        Verdict acc = Verdict::Holds;
        const std::string& y = f.bound_var();
        for (Integer i = 0; i < n; ++i) {
            env[y] = i;
            Verdict v = check(f.body(), env);
            if (v == Verdict::Fails) {
                acc = v;
                break;
            }
            if (v == Verdict::Unknown) {
                acc = v;
                if (!body_can_fail)
                    break;
            }
        }
        env.erase(y);
        return acc;
    }

    struct Split {
        std::vector<Goal> goals;
        std::vector<std::string> unknowns;
        std::vector<Formula> rest;
    };

    static void split(const Formula& f, Split& out)
    {
        switch (f.kind()) {
        case Formula::Kind::Equation:
            out.goals.push_back(decompose(f.term()));
            break;
        case Formula::Kind::And:
            for (const auto& p : f.parts())
                split(p, out);
            break;
        case Formula::Kind::Exists:
            if (is_equational(f.body())) {
                out.unknowns.insert(out.unknowns.end(), f.vars().begin(), f.vars().end());
                split(f.body(), out);
            } else {
                out.rest.push_back(f);
            }
            break;
        case Formula::Kind::ForallBounded:
            out.rest.push_back(f);
            break;
        }
    }

    Verdict check_exists(const Formula& f, Assignment& env)
    {
        Split sp;
        sp.unknowns = f.vars();
        split(f.body(), sp);
        std::vector<const Goal*> goals;
        for (const auto& g : sp.goals)
            goals.push_back(&g);

        std::set<std::string> rest_vars;
        for (const auto& r : sp.rest)
            for (const auto& v : free_vars(r))
                rest_vars.insert(v);
        std::vector<std::string> solver_unknowns;
        std::vector<std::string> enumerated;
        for (const auto& u : sp.unknowns) {
            if (rest_vars.count(u))
                enumerated.push_back(u);
            solver_unknowns.push_back(u);
        }

        bool found = false;
        auto on_solution = [&](Assignment& e) -> bool {
            if (sp.rest.empty()) {
                found = true;
                return true;
            }
            return enumerate_rest(sp.rest, e, found);
        };
        // Variables needed by the non-equational rest must be enumerated even
        // when unconstrained, so they are not defaulted to 0 by the solver.
        std::function<bool(std::size_t)> outer = [&](std::size_t idx) -> bool {
            if (idx == enumerated.size())
                return search(goals, solver_unknowns, env, on_solution);
            const std::string& v = enumerated[idx];
            if (env.count(v) || constrained(v, sp.goals))
                return outer(idx + 1);
            bool stop = false;
            inexact_ = true;
            for (Integer val = 0; val <= bound_ && !stop; ++val) {
                env[v] = val;
                stop = outer(idx + 1);
            }
            env.erase(v);
            return stop;
        };
        const bool saved = inexact_;
        inexact_ = false;
        outer(0);
        const bool exhaustive = !inexact_;
        inexact_ = saved || inexact_;
        if (found)
            return Verdict::Holds;
        return exhaustive ? Verdict::Fails : Verdict::Unknown;
    }

    static bool constrained(const std::string& v, const std::vector<Goal>& goals)
    {
        for (const auto& g : goals)
            if (g.vars.count(v))
                return true;
        return false;
    }

    bool enumerate_rest(const std::vector<Formula>& rest, Assignment& env, bool& found)
    {
        Verdict acc = Verdict::Holds;
        for (const auto& r : rest) {
            Verdict v = check(r, env);
            if (v != Verdict::Holds) {
                acc = v;
                break;
            }
        }
        if (acc == Verdict::Holds) {
            found = true;
            return true;
        }
        if (acc == Verdict::Unknown)
            inexact_ = true;
        return false;
    }

    Integer bound_;
    CheckOptions opts_;
    std::uint64_t nodes_ = 0;
    bool incomplete_ = false;
    // Set when some branch was cut by the search bound or the budget.
    bool inexact_ = false;
    std::uint64_t budget_hits_ = 0;
};

} // namespace

Verdict check_sentence(const Formula& f, const Assignment& params, const Integer& search_bound,
                       const CheckOptions& opts)
{
    Checker c(search_bound, opts);
    Assignment env = params;
    try {
        return c.check(f, env);
    } catch (const SearchAbort&) {
        return Verdict::Unknown;
    }
}

std::optional<Assignment> find_witness(const Formula& f, const Assignment& params,
                                       const Integer& search_bound, const CheckOptions& opts)
{
    if (!is_equational(f))
        throw InvalidArgument("find_witness needs an equational formula");
    std::vector<Goal> goals;
    std::vector<std::string> unknowns;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        switch (g.kind()) {
        case Formula::Kind::Equation:
            goals.push_back(decompose(g.term()));
            break;
        case Formula::Kind::And:
            for (const auto& p : g.parts())
                walk(p);
            break;
        case Formula::Kind::Exists:
            unknowns.insert(unknowns.end(), g.vars().begin(), g.vars().end());
            walk(g.body());
            break;
        default:
            break;
        }
    };
    walk(f);
    std::vector<const Goal*> ptrs;
    for (const auto& g : goals)
        ptrs.push_back(&g);
    Checker c(search_bound, opts);
    Assignment env = params;
    std::optional<Assignment> result;
    try {
        c.search(ptrs, unknowns, env, [&](Assignment& e) {
            Assignment w;
            for (const auto& u : unknowns)
                w[u] = e.at(u);
            result = std::move(w);
            return true;
        });
    } catch (const SearchAbort&) {
    }
    return result;
}

namespace {

bool guided_block(const Formula& body, const std::vector<std::string>& unknowns, Assignment& env,
                  const WitnessSupplier& supply, const Integer& bound, const CheckOptions& opts);

bool guided(const Formula& f, Assignment& env, const WitnessSupplier& supply, const Integer& bound,
            const CheckOptions& opts)
{
    switch (f.kind()) {
    case Formula::Kind::ForallBounded: {
        Integer top = eval_term(f.term(), env, opts.limits);
        if (f.strict())
            top -= 1;
        for (Integer v = 0; v <= top; ++v) {
            Assignment inner = env;
            inner[f.bound_var()] = v;
            if (!guided(f.body(), inner, supply, bound, opts))
                return false;
        }
        return true;
    }
    case Formula::Kind::Exists: {
        Assignment given = supply ? supply(env) : Assignment{};
        std::vector<std::string> rest;
        for (const auto& v : f.vars()) {
            auto it = given.find(v);
            if (it != given.end())
                env[v] = it->second;
            else
                rest.push_back(v);
        }
        return guided_block(f.body(), rest, env, supply, bound, opts);
    }
    default:
        return guided_block(f, {}, env, supply, bound, opts);
    }
}

bool guided_block(const Formula& body, const std::vector<std::string>& unknowns, Assignment& env,
                  const WitnessSupplier& supply, const Integer& bound, const CheckOptions& opts)
{
    std::vector<Formula> equations, nested;
    for (const auto& p : body.kind() == Formula::Kind::And ? body.parts() : std::vector<Formula>{body})
        (is_equational(p) ? equations : nested).push_back(p);
    if (!equations.empty() || !unknowns.empty()) {
        Formula eqs = equations.empty() ? Formula::equation(Term())
                      : equations.size() == 1 ? equations[0]
                                              : Formula::conj(equations);
        auto w = find_witness(unknowns.empty() ? eqs : Formula::exists(unknowns, eqs), env, bound, opts);
        if (!w)
            return false;
        for (const auto& [k, v] : *w)
            env[k] = v;
    }
    for (const auto& n : nested) {
        Assignment inner = env;
        if (!guided(n, inner, supply, bound, opts))
            return false;
    }
    return true;
}

} // namespace

Verdict check_guided(const Formula& f, const Assignment& params, const WitnessSupplier& supply,
                     const Integer& search_bound, const CheckOptions& opts)
{
    Assignment env = params;
    try {
        return guided(f, env, supply, search_bound, opts) ? Verdict::Holds : Verdict::Unknown;
    } catch (const BudgetExceeded&) {
        return Verdict::Unknown;
    }
}

// ---------------------------------------------------------------- stats

namespace {

void walk_stats(const Formula& f, FormulaStats& s, std::vector<std::pair<char, std::size_t>>* blocks)
{
    auto push = [&](char k, std::size_t n) {
        if (!blocks)
            return;
        if (!blocks->empty() && blocks->back().first == k)
            blocks->back().second += n;
        else
            blocks->emplace_back(k, n);
    };
    switch (f.kind()) {
    case Formula::Kind::Equation:
        ++s.equations;
        s.node_count += node_count(f.term());
        s.max_power_nesting = std::max(s.max_power_nesting, power_nesting(f.term()));
        break;
    case Formula::Kind::And:
        for (std::size_t i = 0; i < f.parts().size(); ++i)
            walk_stats(f.parts()[i], s, i == 0 ? blocks : nullptr);
        break;
    case Formula::Kind::Exists:
        s.existential += f.vars().size();
        s.existential_vars.insert(s.existential_vars.end(), f.vars().begin(), f.vars().end());
        push('E', f.vars().size());
        walk_stats(f.body(), s, blocks);
        break;
    case Formula::Kind::ForallBounded:
        ++s.universal;
        s.universal_vars.push_back(f.bound_var());
        s.node_count += node_count(f.term());
        push('A', 1);
        walk_stats(f.body(), s, blocks);
        break;
    }
}

} // namespace

FormulaStats stats(const Formula& f, const std::vector<std::string>& params)
{
    FormulaStats s;
    if (params.empty()) {
        auto fv = free_vars(f);
        s.params.assign(fv.begin(), fv.end());
    } else {
        s.params = params;
    }
    std::vector<std::pair<char, std::size_t>> blocks;
    walk_stats(f, s, &blocks);
    std::ostringstream os;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        os << (i ? " " : "") << blocks[i].first << blocks[i].second;
    s.shape = os.str();
    return s;
}

std::string to_text(const FormulaStats& s)
{
    std::ostringstream os;
    os << "existential: " << s.existential << '\n'
       << "universal: " << s.universal << '\n'
       << "parameters: " << s.params.size() << " (";
    for (std::size_t i = 0; i < s.params.size(); ++i)
        os << (i ? "," : "") << s.params[i];
    os << ")\n"
       << "shape: " << s.shape << '\n'
       << "max power nesting: " << s.max_power_nesting << '\n'
       << "term nodes: " << s.node_count << '\n';
    return os.str();
}

} // namespace eppe
