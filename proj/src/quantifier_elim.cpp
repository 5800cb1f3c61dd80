#include "eppe/quantifier_elim.hpp"

#include "eppe/errors.hpp"
#include "eppe/io.hpp"
#include "eppe/poly.hpp"

#include <algorithm>
#include <set>

namespace eppe {

const char* to_string(ConditionKind k)
{
    switch (k) {
    case ConditionKind::CongruenceModBinomial:
        return "congruence-mod-binomial";
    case ConditionKind::Identity:
        return "identity";
    case ConditionKind::StrongInequality:
        return "strong-inequality";
    case ConditionKind::DividesBinomial:
        return "divides-binomial";
    }
    return "?";
}

namespace {

Term equations_term(const Formula& f)
{
    if (f.kind() == Formula::Kind::Equation)
        return f.term();
    if (f.kind() == Formula::Kind::And) {
        std::vector<Term> ts;
        for (const auto& p : f.parts()) {
            if (p.kind() != Formula::Kind::Equation)
                throw ShapeMismatch("matrix must be a conjunction of equations");
            ts.push_back(p.term());
        }
        return sum_of_squares(ts);
    }
    throw ShapeMismatch("matrix must be an equation");
}

} // namespace

BuqInstance buq_from_formula(const Formula& f, const std::vector<std::string>& params)
{
    if (f.kind() != Formula::Kind::ForallBounded)
        throw ShapeMismatch("expected a bounded universal quantifier");
    const Formula& body = f.body();
    if (body.kind() != Formula::Kind::Exists)
        throw ShapeMismatch("expected an existential block under the universal quantifier");
    BuqInstance inst;
    inst.y = f.bound_var();
    inst.b = f.strict() ? f.term() : plus_const(f.term(), 1);
    inst.xs = body.vars();
    inst.G = equations_term(body.body());
    inst.params = params;
    std::set<std::string> allowed(params.begin(), params.end());
    allowed.insert(inst.y);
    allowed.insert(inst.xs.begin(), inst.xs.end());
    for (const auto& v : free_vars(inst.G))
        if (!allowed.count(v))
            throw ShapeMismatch("matrix variable " + v + " is neither bound nor a parameter");
    for (const auto& v : free_vars(inst.b))
        if (!std::count(params.begin(), params.end(), v))
            throw ShapeMismatch("bound variable " + v + " is not a parameter");
    return inst;
}

Formula to_formula(const BuqInstance& inst)
{
    return Formula::forall(inst.y, inst.b, true, Formula::exists(inst.xs, Formula::equation(inst.G)));
}

BuqSplit split_buq(const Document& doc)
{
    BuqSplit out;
    Formula f = doc.formula;
    if (f.kind() == Formula::Kind::Exists && f.body().kind() == Formula::Kind::ForallBounded) {
        out.carried = f.vars();
        f = f.body();
    }
    std::vector<std::string> params = doc.params;
    params.insert(params.end(), out.carried.begin(), out.carried.end());
    out.inst = buq_from_formula(f, params);
    return out;
}

EquationSystem eliminate_buq(const BuqInstance& inst, const ElimNames& names)
{
    if (inst.xs.empty())
        throw ShapeMismatch("bounded universal block needs at least one existential");
    EquationSystem sys;
    sys.m = static_cast<unsigned>(inst.xs.size());
    sys.params = inst.params;
    sys.b = inst.b;
    sys.q = Term::var(names.q);
    sys.w = Term::var(names.w);
    sys.ledger.add(names.q, "buq");
    sys.ledger.add(names.w, "buq");
    std::map<std::string, Term> to_z;
    std::map<std::string, Term> to_bound;
    for (unsigned l = 0; l <= sys.m; ++l) {
        std::string n = names.z + std::to_string(l);
        sys.ledger.add(n, "buq");
        sys.z.push_back(Term::var(n));
    }
    to_z[inst.y] = sys.z[0];
    to_bound[inst.y] = inst.b;
    for (unsigned l = 1; l <= sys.m; ++l) {
        to_z[inst.xs[l - 1]] = sys.z[l];
        to_bound[inst.xs[l - 1]] = sys.w;
    }
    sys.poly = substitute(inst.G, to_z);
    sys.B = build_B_bound(inst.G, to_bound, inst.params);

    sys.conditions.push_back({ConditionKind::CongruenceModBinomial, sys.poly, 0});
    sys.conditions.push_back({ConditionKind::Identity, sys.z[0], 0});
    sys.conditions.push_back({ConditionKind::StrongInequality, sys.q, 0});
    for (unsigned l = 1; l <= sys.m; ++l)
        sys.conditions.push_back({ConditionKind::DividesBinomial, sys.z[l], l});
    return sys;
}

namespace {

Integer binom_checked(const Integer& n, const Integer& k)
{
    if (k < 0 || n < 0 || !k.fits_ulong_p())
        throw BudgetExceeded("binomial argument out of range");
    if (k > n)
        return 0;
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k.get_ui());
    return r;
}

bool divides(const Integer& d, const Integer& n)
{
    if (d == 0)
        return n == 0;
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

} // namespace

bool condition_holds(const EquationSystem& sys, const Condition& c, const Assignment& env,
                     const EvalLimits& limits)
{
    switch (c.kind) {
    case ConditionKind::CongruenceModBinomial: {
        Integer mod = binom_checked(eval_term(sys.q, env, limits), eval_term(sys.b, env, limits));
        return divides(mod, eval_term(c.subject, env, limits));
    }
    case ConditionKind::Identity:
        return eval_term(c.subject, env, limits) == eval_term(sys.q, env, limits);
    case ConditionKind::StrongInequality:
        return eval_term(sys.q, env, limits)
            > eval_term(strong_ineq_bound(sys.b, sys.B, sys.w, sys.m), env, limits);
    case ConditionKind::DividesBinomial: {
        Integer mod = binom_checked(eval_term(sys.q, env, limits), eval_term(sys.b, env, limits));
        Integer cz = binom_checked(eval_term(c.subject, env, limits), eval_term(sys.w, env, limits));
        return divides(mod, cz);
    }
    }
    return false;
}

bool system_holds(const EquationSystem& sys, const Assignment& env, const EvalLimits& limits)
{
    for (const auto& c : sys.conditions)
        if (!condition_holds(sys, c, env, limits))
            return false;
    return true;
}

std::string describe(const EquationSystem& sys, const Condition& c)
{
    auto s = [](const Term& t) { return emit(t, EmitFormat::Plain); };
    std::string binom_qb = "C(" + s(sys.q) + ", " + s(sys.b) + ")";
    switch (c.kind) {
    case ConditionKind::CongruenceModBinomial:
        return s(c.subject) + " == 0 mod " + binom_qb;
    case ConditionKind::Identity:
        return s(c.subject) + " = " + s(sys.q);
    case ConditionKind::StrongInequality:
        return s(sys.q) + " > " + s(strong_ineq_bound(sys.b, sys.B, sys.w, sys.m));
    case ConditionKind::DividesBinomial:
        return binom_qb + " | C(" + s(c.subject) + ", " + s(sys.w) + ")";
    }
    return {};
}

// ---------------------------------------------------------------- flatten

FlattenResult flatten(const EquationSystem& sys, NameSupply& ns, const FlattenOptions& opts)
{
    FlattenResult out;
    const Term& q = sys.q;
    const Term& w = sys.w;

    Term y1 = Term::var(ns.fresh("flat", "y1"));
    Term y2 = Term::var(ns.fresh("flat", "y2"));
    out.y1_block = {y1.name(), y2.name()};

    GadgetResult hblock = g_binomial_expdioph(ns, y1, q, sys.b, true);
    out.h_block = hblock.vars();

    Term j1 = Term::var(ns.fresh("flat", "j1"));
    Term j2 = Term::var(ns.fresh("flat", "j2"));
    Term j3 = Term::var(ns.fresh("flat", "j3"));
    out.j_block = {j1.name(), j2.name(), j3.name()};
    std::vector<Term> jgroup = remainder_equations(j1, sys.poly, y1, j2, j3);
    if (!syntactically_nonnegative(sys.poly)) {
        // y1 | P for P of either sign
        jgroup[1] = jgroup[1] * (y1 * j3 + sys.poly - j1);
    }
    jgroup.push_back(j1);

    GadgetResult strong = g_strong_ineq(ns, q, sys.b, sys.B, w, sys.m);
    // The strong inequality's slack is y2.
    std::map<std::string, Term> slack{{strong.vars()[0], y2}};
    Term strong_eq = substitute(strong.equations()[0], slack);

    std::vector<GadgetResult> divs;
    for (unsigned l = 1; l <= sys.m; ++l) {
        divs.push_back(g_div_binomial(ns, y1, sys.z[l], w));
        out.divides_vars.push_back(divs.back().vars());
    }

    out.fixed_groups.push_back(hblock.as_term());
    out.fixed_groups.push_back(group_term(jgroup));
    out.fixed_groups.push_back(square(sys.z[0] - q));
    out.fixed_groups.push_back(square(strong_eq));
    for (const auto& d : divs)
        out.divides_groups.push_back(d.as_term());

    std::vector<Term> all = out.fixed_groups;
    all.insert(all.end(), out.divides_groups.begin(), out.divides_groups.end());
    out.equation = Term::sum(std::move(all));

    for (const auto& c : opts.carried)
        out.ledger.add(c, "carried");
    out.ledger.append(sys.ledger);
    out.ledger.add(y1.name(), "flat.binomial");
    out.ledger.add(y2.name(), "flat.strong-ineq");
    for (const auto& j : out.j_block)
        out.ledger.add(j, "flat.congruence");
    for (std::size_t role = 0; role < 4; ++role)
        for (const auto& d : out.divides_vars)
            out.ledger.add(d[role], "div-binomial");
    for (const auto& h : out.h_block)
        out.ledger.add(h, "binomial-digits");

    out.document.params = opts.params.empty() ? sys.params : opts.params;
    out.document.formula = Formula::exists(out.ledger.names(), Formula::equation(out.equation));
    return out;
}

// ---------------------------------------------------------------- collapse

namespace {

// 2z - (b1+b2)^2 - (3 b1 + b2), with the linear part spelled out term by term.
Term pairing_head(const Term& z, const Term& b1, const Term& b2)
{
    auto sum = to_poly(b1 + b2);
    auto lin = to_poly(3 * b1 + b2);
    if (!sum || !lin)
        return cantor_equation(z, b1, b2);
    Term head = 2 * z - square(sum->to_term());
    Integer constant = 0;
    for (const auto& [mono, c] : lin->terms()) {
        if (mono.empty()) {
            constant = c;
            continue;
        }
        Poly single;
        single += Poly::constant(abs(c)) * [&] {
            Poly p = Poly::constant(1);
            for (const auto& [v, e] : mono)
                p = p * Poly::var(v).pow(e);
            return p;
        }();
        head = c > 0 ? head - single.to_term() : head + single.to_term();
    }
    if (constant > 0)
        head = head - Term(constant);
    else if (constant < 0)
        head = head + Term(Integer(-constant));
    return head;
}

Term tidy(const Term& t)
{
    auto p = to_poly(t);
    return p ? p->to_term() : t;
}

} // namespace

Formula collapse_pair_quantifiers(const Formula& f, const CollapseNames& names)
{
    std::vector<std::string> outer;
    const Formula* cur = &f;
    if (cur->kind() == Formula::Kind::Exists && cur->body().kind() == Formula::Kind::ForallBounded) {
        outer = cur->vars();
        cur = &cur->body();
    }
    if (cur->kind() != Formula::Kind::ForallBounded
        || cur->body().kind() != Formula::Kind::ForallBounded)
        throw ShapeMismatch("expected two consecutive bounded universal quantifiers");
    const Formula& fx = *cur;
    const Formula& fy = cur->body();
    const std::string& x = fx.bound_var();
    const std::string& y = fy.bound_var();
    if (mentions(fy.term(), x))
        throw ShapeMismatch("the second bound must not depend on the first variable");

    std::vector<std::string> inner;
    Term matrix;
    if (fy.body().kind() == Formula::Kind::Exists) {
        inner = fy.body().vars();
        matrix = equations_term(fy.body().body());
    } else {
        matrix = equations_term(fy.body());
    }

    // Inclusive bounds and their successors.
    Term b1 = fx.strict() ? tidy(fx.term() - 1) : fx.term();
    Term b2 = fy.strict() ? tidy(fy.term() - 1) : fy.term();
    Term b1s = fx.strict() ? fx.term() : tidy(plus_const(fx.term(), 1));
    Term b2s = fy.strict() ? fy.term() : tidy(plus_const(fy.term(), 1));

    Term z = Term::var(names.z);
    Term t = Term::var(names.t);
    Term vx = Term::var(names.slack1);
    Term vy = Term::var(names.slack2);
    Term X = Term::var(x);
    Term Y = Term::var(y);

    Term guard = ((b1s + vx) - X) * ((b2s + vy) - Y) * matrix;
    Term eq = Term::sum({square(pairing_head(z, b1, b2)), square(cantor_equation(t, X, Y)), square(guard)});

    std::vector<std::string> inner_vars{x, y};
    inner_vars.insert(inner_vars.end(), inner.begin(), inner.end());
    inner_vars.push_back(names.slack1);
    inner_vars.push_back(names.slack2);
    outer.push_back(names.z);
    return Formula::exists(outer,
                           Formula::forall(names.t, plus_const(z, 1), true,
                                           Formula::exists(inner_vars, Formula::equation(eq))));
}

// ---------------------------------------------------------------- witnesses

Assignment construct_dpr_witness(const BuqInstance& inst, const EquationSystem& sys,
                                 const std::vector<std::vector<Integer>>& witnesses,
                                 const Assignment& params, const EvalLimits& limits)
{
    Integer bv = eval_term(inst.b, params, limits);
    if (bv < 0)
        bv = 0;
    if (!bv.fits_ulong_p() || bv > 4096)
        throw BudgetExceeded("bound too large for witness construction");
    const unsigned long b = bv.get_ui();
    if (witnesses.size() != b)
        throw InvalidArgument("need one witness list per value of the bounded variable");
    const std::size_t m = inst.xs.size();
    Integer top = 0;
    for (const auto& row : witnesses) {
        if (row.size() != m)
            throw InvalidArgument("witness list has the wrong length");
        for (const auto& x : row) {
            if (x < 0)
                throw InvalidArgument("witness values are natural numbers");
            top = std::max(top, x);
        }
    }
    Assignment env = params;
    Integer w = std::max(Integer(b), Integer(top + 1));
    env[sys.w.name()] = w;

    Integer Bv = eval_term(sys.B, env, limits);
    Integer fsize = Integer(b) + w + Bv;
    if (!fsize.fits_ulong_p() || fsize > Integer(limits.max_bits))
        throw BudgetExceeded("factorial argument exceeds the budget");
    Integer f1, f2;
    mpz_fac_ui(f1.get_mpz_t(), b);
    mpz_fac_ui(f2.get_mpz_t(), fsize.get_ui());
    Integer L = f1 * f2;
    Integer bound = eval_term(strong_ineq_bound(sys.b, sys.B, sys.w, sys.m), env, limits);
    // smallest k with k L - 1 > bound
    Integer k = (bound + 2 + L - 1) / L;
    if (k < 1)
        k = 1;
    Integer q = k * L - 1;
    if (mpz_sizeinbase(q.get_mpz_t(), 2) > limits.max_bits)
        throw BudgetExceeded("q exceeds the budget");
    env[sys.q.name()] = q;
    env[sys.z[0].name()] = q;

    std::vector<Integer> u(b);
    for (unsigned long y = 0; y < b; ++y)
        u[y] = (q + 1) / (y + 1) - 1;

    for (std::size_t l = 1; l <= m; ++l) {
        Integer z = 0;
        Integer mod = 1;
        for (unsigned long y = 0; y < b; ++y) {
            // z' = z + mod * t with z' = x mod u_y
            Integer r = witnesses[y][l - 1] % u[y];
            Integer diff = r - z;
            Integer inv;
            if (mpz_invert(inv.get_mpz_t(), mod.get_mpz_t(), u[y].get_mpz_t()) == 0 && u[y] != 1)
                throw Error("moduli are not coprime");
            Integer t = (diff * inv) % u[y];
            if (t < 0)
                t += u[y];
            z += mod * t;
            mod *= u[y];
        }
        env[sys.z[l].name()] = z;
    }

    Assignment out;
    for (const auto& name : sys.ledger.names())
        out[name] = env.at(name);
    return out;
}

Assignment construct_dpr_witness(const BuqInstance& inst,
                                 const std::vector<std::vector<Integer>>& witnesses,
                                 const Assignment& params, const EvalLimits& limits)
{
    return construct_dpr_witness(inst, eliminate_buq(inst), witnesses, params, limits);
}

} // namespace eppe
