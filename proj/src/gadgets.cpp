#include "eppe/gadgets.hpp"

#include "eppe/errors.hpp"

namespace eppe {

std::vector<Term> GadgetResult::equations() const
{
    std::vector<Term> out;
    for (const auto& g : groups)
        out.insert(out.end(), g.begin(), g.end());
    return out;
}

Term group_term(const std::vector<Term>& group)
{
    if (group.empty())
        throw InvalidArgument("empty equation group");
    if (group.size() == 1)
        return square(group.front());
    return square(sum_of_squares(group));
}

Term GadgetResult::as_term() const
{
    std::vector<Term> parts;
    for (const auto& g : groups)
        parts.push_back(group_term(g));
    if (parts.empty())
        return Term(0);
    return parts.size() == 1 ? parts.front() : Term::sum(std::move(parts));
}

Formula GadgetResult::as_formula() const
{
    std::vector<Formula> eqs;
    for (const auto& e : equations())
        eqs.push_back(Formula::equation(e));
    if (eqs.size() == 1)
        return eqs.front();
    return Formula::conj(std::move(eqs));
}

void GadgetResult::append(GadgetResult other)
{
    for (auto& g : other.groups)
        groups.push_back(std::move(g));
    ledger.append(other.ledger);
    for (auto& n : other.notes)
        notes.push_back(std::move(n));
}

namespace {

Term fresh(NameSupply& ns, GadgetResult& r, const std::string& origin, const std::string& role)
{
    std::string name = ns.fresh(origin, role);
    r.ledger.add(name, origin);
    return Term::var(name);
}

// D - 1 written without a subtraction when D ends in a constant.
std::optional<Term> minus_one(const Term& D)
{
    if (D.is_const() && D.value() >= 1)
        return Term(Integer(D.value() - 1));
    if (D.kind() == Term::Kind::Sum && D.children().back().is_const()
        && D.children().back().value() >= 1)
        return plus_const(D, -1);
    return std::nullopt;
}

} // namespace

std::vector<Term> remainder_equations(const Term& y, const Term& a, const Term& D, const Term& v,
                                      const Term& vq)
{
    const bool zero = y.is_const(0);
    Term yv = zero ? v : y + v;
    Term first = [&] {
        if (auto d1 = minus_one(D))
            return yv - *d1;
        return plus_const(yv, 1) - D;
    }();
    Term second = D * vq - a;
    return {first, zero ? second : second + y};
}

GadgetResult g_remainder(NameSupply& ns, const Term& y, const Term& a, const Term& D)
{
    GadgetResult r;
    Term v = fresh(ns, r, "rem", "slack");
    Term vq = fresh(ns, r, "rem", "quot");
    r.groups.push_back(remainder_equations(y, a, D, v, vq));
    return r;
}

GadgetResult g_less(NameSupply& ns, const Term& a, const Term& b)
{
    GadgetResult r;
    Term v = fresh(ns, r, "less", "slack");
    r.groups.push_back({plus_const(a + v, 1) - b});
    return r;
}

GadgetResult g_less_equal(NameSupply& ns, const Term& a, const Term& b)
{
    GadgetResult r;
    Term v = fresh(ns, r, "le", "slack");
    r.groups.push_back({a + v - b});
    return r;
}

GadgetResult g_divides(NameSupply& ns, const Term& b, const Term& c)
{
    GadgetResult r;
    Term t = fresh(ns, r, "div", "quot");
    r.groups.push_back({b * t - c});
    return r;
}

GadgetResult g_congruent(NameSupply& ns, const Term& x, const Term& y, const Term& r)
{
    GadgetResult out;
    Term u1 = fresh(ns, out, "cong", "res");
    Term u2 = fresh(ns, out, "cong", "res");
    out.append(g_remainder(ns, u1, x, r));
    out.append(g_remainder(ns, u2, y, r));
    out.groups.push_back({u1 - u2});
    return out;
}

Integer cantor_J(const Integer& m, const Integer& n)
{
    Integer s = m + n;
    return (s * s + 3 * m + n) / 2;
}

Term cantor_equation(const Term& z, const Term& m, const Term& n)
{
    return 2 * z - square(m + n) - 3 * m - n;
}

std::pair<Integer, Integer> pell(const Integer& A, unsigned n)
{
    if (A < 2)
        throw InvalidArgument("Pell sequences need A >= 2");
    Integer x0 = 1, y0 = 0;
    Integer x1 = A, y1 = 1;
    if (n == 0)
        return {x0, y0};
    for (unsigned k = 1; k < n; ++k) {
        Integer x2 = 2 * A * x1 - x0;
        Integer y2 = 2 * A * y1 - y0;
        x0 = x1;
        y0 = y1;
        x1 = x2;
        y1 = y2;
    }
    return {x1, y1};
}

Integer psi(const Integer& A, unsigned n) { return pell(A, n).second; }
Integer chi(const Integer& A, unsigned n) { return pell(A, n).first; }

PellWitness pell_chain(const Integer& A, const Integer& B, const Integer& C, const Integer& i,
                       const Integer& j)
{
    PellWitness w;
    w.A = A;
    w.B = B;
    w.C = C;
    w.i = i;
    w.j = j;
    Integer a2 = A * A - 1;
    w.D = a2 * C * C + 1;
    w.E = 2 * (i + 1) * w.D * C * C;
    w.F = a2 * w.E * w.E + 1;
    w.G = A + w.F * (w.F - A);
    w.H = B + 2 * j * C;
    w.I = (w.G * w.G - 1) * w.H * w.H + 1;
    w.chi = 0;
    Integer c2 = a2 * C * C + 1;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), c2.get_mpz_t());
    if (r * r == c2)
        w.chi = r;
    return w;
}

GadgetResult g_psi(NameSupply& ns, const Term& A, const Term& B, const Term& C)
{
    GadgetResult r;
    Term D = fresh(ns, r, "psi", "D");
    Term E = fresh(ns, r, "psi", "E");
    Term F = fresh(ns, r, "psi", "F");
    Term G = fresh(ns, r, "psi", "G");
    Term H = fresh(ns, r, "psi", "H");
    Term I = fresh(ns, r, "psi", "I");
    Term i = fresh(ns, r, "psi", "i");
    Term j = fresh(ns, r, "psi", "j");
    Term s = fresh(ns, r, "psi", "sq");
    Term t = fresh(ns, r, "psi", "quot");
    Term v = fresh(ns, r, "psi", "slack");
    Term a2 = square(A) - 1;
    r.groups.push_back({
        D - (a2 * square(C) + 1),
        E - 2 * plus_const(i, 1) * D * square(C),
        F - (a2 * square(E) + 1),
        G - (A + F * (F - A)),
        H - (B + 2 * j * C),
        I - ((square(G) - 1) * square(H) + 1),
        D * F * I - square(s),
        F * t - (H - C),
        B + v - C,
    });
    return r;
}

// --- relation combining -----------------------------------------------------

namespace {

std::string ph(const std::string& what, std::size_t i = 0)
{
    return "%" + what + (i ? std::to_string(i) : std::string());
}

} // namespace

Poly relation_combine_product(std::size_t q)
{
    if (q < 1 || q > 4)
        throw InvalidArgument("relation combining supports 1 <= q <= 4");
    Poly X = Poly::var(ph("X"));
    Poly Y = Poly::var(ph("Y"));
    Poly W = Poly::var(ph("W"));
    Poly result = Poly::constant(1);
    for (std::size_t mask = 0; mask < (std::size_t{1} << q); ++mask) {
        Poly radical;
        for (std::size_t i = 1; i <= q; ++i) {
            Poly term = Poly::var(ph("s", i)) * W.pow(static_cast<unsigned>(i - 1));
            if (mask & (std::size_t{1} << (i - 1)))
                radical -= term;
            else
                radical += term;
        }
        result = result * (X - Y * radical);
    }
    return result;
}

Poly relation_combine_reduced(std::size_t q)
{
    Poly p = relation_combine_product(q);
    for (std::size_t i = 1; i <= q; ++i) {
        p = p.reduce_square(ph("s", i), Poly::var(ph("A", i)));
        if (p.degree_in(ph("s", i)) != 0)
            throw Error("relation combining left an odd radical power");
    }
    return p;
}

Term relation_combine(const RelationCombineInput& in)
{
    const std::size_t q = in.A.size();
    Poly reduced = relation_combine_reduced(q);
    Term W = [&] {
        if (in.W)
            return *in.W;
        std::vector<Term> parts{Term(1)};
        for (const auto& a : in.A)
            parts.push_back(square(a));
        return Term::sum(std::move(parts));
    }();
    Term B2 = square(in.B);
    Term Y = B2 * (2 * in.D - 1);
    Term X = B2 * in.n + square(in.C) - Y * (square(in.C) + pow(W, Term(long(q))));
    std::map<std::string, Term> subs{{ph("X"), X}, {ph("Y"), Y}, {ph("W"), W}};
    for (std::size_t i = 1; i <= q; ++i)
        subs.emplace(ph("A", i), in.A[i - 1]);
    return substitute(reduced.to_term(), subs);
}

// --- binomial coefficients --------------------------------------------------

GadgetResult g_binomial_expdioph(NameSupply& ns, const Term& y, const Term& n, const Term& s,
                                 bool position_var)
{
    if (n.is_const(0))
        throw InvalidArgument("binomial digit gadget needs n >= 1");
    GadgetResult r;
    std::optional<Term> p;
    if (position_var)
        p = fresh(ns, r, "bexp", "pos");
    Term hq = fresh(ns, r, "bexp", "hi");
    Term hr = fresh(ns, r, "bexp", "lo");
    Term hd = position_var ? fresh(ns, r, "bexp", "dslack") : Term();
    Term hl = fresh(ns, r, "bexp", "lslack");
    if (!position_var)
        hd = fresh(ns, r, "bexp", "dslack");
    Term u = pow(2, n) + 1;
    Term pos = p ? *p : s;
    std::vector<Term> eqs;
    if (p)
        eqs.push_back(s - *p);
    eqs.push_back(pow(plus_const(u, 1), n) - hq * pow(u, plus_const(s, 1)) - y * pow(u, pos) - hr);
    eqs.push_back(plus_const(hr + hl, 1) - pow(u, pos));
    eqs.push_back(plus_const(y + hd, 1) - u);
    r.groups.push_back(std::move(eqs));
    return r;
}

GadgetResult g_binomial_dioph(NameSupply& ns, const Term& y, const Term& n, const Term& s)
{
    if (s.is_const(0))
        throw InvalidArgument("binomial representation needs s > 0");
    if (s.is_const() && n.is_const() && s.value() > n.value())
        throw InvalidArgument("binomial representation needs s <= n");
    GadgetResult r;
    const char* o = "bdioph";
    Term x = fresh(ns, r, o, "x");
    Term w = fresh(ns, r, o, "w");
    Term k = fresh(ns, r, o, "k");
    Term l = fresh(ns, r, o, "l");
    Term m = fresh(ns, r, o, "m");
    Term i = fresh(ns, r, o, "i");
    Term j = fresh(ns, r, o, "j");
    Term v1 = fresh(ns, r, o, "v1");
    Term v2 = fresh(ns, r, o, "v2");
    Term v3 = fresh(ns, r, o, "v3");
    Term D = fresh(ns, r, o, "D");
    Term F = fresh(ns, r, o, "F");
    Term I = fresh(ns, r, o, "I");
    Term J = fresh(ns, r, o, "J");
    Term K = fresh(ns, r, o, "K");
    Term L = fresh(ns, r, o, "L");
    Term M = fresh(ns, r, o, "M");
    Term W = fresh(ns, r, o, "W");

    r.groups.push_back(remainder_equations(y, plus_const(w, 1), x, v1, v2));

    Term A = M * plus_const(x, 1);
    Term Bn = plus_const(n, 1);
    Term Cm = plus_const(m + n, 1);
    Term a2 = square(A) - 1;
    Term G = A + F * (F - A);
    Term H = Bn + 2 * j * Cm;
    Term sq1 = D * F * I;
    Term sq2 = (square(M) - 1) * square(K) + 1;
    Term sq3 = (square(M) * square(x) - 1) * square(L) + 1;
    Term pos = (x - 4 * pow(n, s)) * (square(K) * square(L) - 4 * square(Cm - K * L * plus_const(w, 1)));
    r.groups.push_back({
        D - (a2 * square(Cm) + 1),
        F - (4 * a2 * square(plus_const(i, 1)) * square(D) * pow(Cm, 4) + 1),
        I - ((square(G) - 1) * square(H) + 1),
        M - (8 * n * plus_const(x + w, 1) + 2),
        K + s - (plus_const(n, 1) + k * (M - 1)),
        L - (plus_const(s, 1) + l * (M * x - 1)),
        W - (1 + square(sq1) + square(sq2) + square(sq3)),
        J - pos,
    });

    RelationCombineInput rc{{sq1, sq2, sq3}, F, H - Cm, J, v3, W};
    r.groups.push_back({relation_combine(rc)});
    return r;
}

Term div_binomial_base(const Term& y1, const Term& z, bool literal)
{
    return (literal ? plus_const(y1, 1) : y1) * pow(2, z);
}

GadgetResult g_div_binomial(NameSupply& ns, const Term& y1, const Term& z, const Term& w, bool literal)
{
    GadgetResult r;
    const char* o = literal ? "divbl" : "divb";
    Term p = fresh(ns, r, o, "p");
    Term q = fresh(ns, r, o, "rest");
    Term m = fresh(ns, r, o, "slack");
    Term s = fresh(ns, r, o, "quot");
    Term u = div_binomial_base(y1, z, literal);
    r.groups.push_back({
        pow(plus_const(u, 1), z) - p * pow(u, w) - q,
        plus_const(q + m, 1) - pow(u, w),
        y1 * s - p,
    });
    if (literal)
        r.notes.push_back("literal base (y1+1)*2^z does not guarantee y1 | u");
    return r;
}

// --- size bounds ------------------------------------------------------------

namespace {

Term majorant(const Term& t, const std::map<std::string, Term>& subs,
              const std::set<std::string>& params)
{
    switch (t.kind()) {
    case Term::Kind::Const:
        return t;
    case Term::Kind::Var: {
        auto it = subs.find(t.name());
        if (it != subs.end())
            return it->second;
        if (params.count(t.name()))
            return t;
        throw InvalidArgument("no bound substitution for variable " + t.name());
    }
    case Term::Kind::Sum:
    case Term::Kind::Product: {
        std::vector<Term> kids;
        for (const auto& k : t.children())
            kids.push_back(majorant(k, subs, params));
        return t.kind() == Term::Kind::Sum ? Term::sum(std::move(kids)) : Term::product(std::move(kids));
    }
    case Term::Kind::Difference: {
        Term a = majorant(t.children()[0], subs, params);
        Term b = majorant(t.children()[1], subs, params);
        if (b.is_const(0))
            return a;
        if (a.is_const(0))
            return b;
        return a + b;
    }
    case Term::Kind::Power:
        if (!t.children()[1].is_const())
            throw InvalidArgument("bound polynomial needs constant exponents");
        return pow(majorant(t.children()[0], subs, params), t.children()[1]);
    }
    return t;
}

} // namespace

Term build_B_bound(const Term& G, const std::map<std::string, Term>& subs,
                   const std::vector<std::string>& params)
{
    return majorant(G, subs, {params.begin(), params.end()});
}

Term strong_ineq_bound(const Term& b, const Term& B, const Term& w, unsigned m)
{
    if (m < 1)
        throw InvalidArgument("strong inequality needs m >= 1");
    Term b1 = plus_const(b, 1);
    Term lead = pow(b1, b1);
    return b + lead * pow(lead * B, pow(w, Term(long(m))));
}

GadgetResult g_strong_ineq(NameSupply& ns, const Term& q, const Term& b, const Term& B, const Term& w,
                           unsigned m)
{
    GadgetResult r;
    Term v = fresh(ns, r, "sineq", "slack");
    Term b1 = plus_const(b, 1);
    Term lead = pow(b1, b1);
    r.groups.push_back({b1 + lead * pow(lead * B, pow(w, Term(long(m)))) + v - q});
    return r;
}

std::vector<std::string> gadget_catalog()
{
    return {"remainder", "less",       "divides",   "congruent",         "cantor",
            "psi-system", "relation-combine", "binom-exp", "binom-dioph", "div-binom",
            "div-binom-literal", "strong-ineq", "b-bound",   "elem",        "hp"};
}

} // namespace eppe
