#include "eppe/pipelines.hpp"

#include "eppe/errors.hpp"
#include "eppe/io.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

namespace eppe {

namespace {

Term fresh(NameSupply& ns, GadgetResult& r, const std::string& origin, const std::string& role)
{
    std::string n = ns.fresh(origin, role);
    r.ledger.add(n, origin);
    return Term::var(n);
}

// Renames the unknowns of a gadget, in ledger order.
void relabel(GadgetResult& g, const std::vector<std::string>& names)
{
    auto old = g.vars();
    if (old.size() != names.size())
        throw InvalidArgument("relabel: name count mismatch");
    std::map<std::string, std::string> map;
    for (std::size_t i = 0; i < old.size(); ++i)
        map[old[i]] = names[i];
    for (auto& group : g.groups)
        for (auto& e : group)
            e = rename(e, map);
    VarLedger fresh_ledger;
    for (const auto& e : g.ledger.entries())
        fresh_ledger.add(map.at(e.name), e.origin);
    g.ledger = std::move(fresh_ledger);
}

std::vector<std::string> numbered(const std::string& stem, unsigned from, unsigned to)
{
    std::vector<std::string> out;
    for (unsigned i = from; i <= to; ++i)
        out.push_back(stem + std::to_string(i));
    return out;
}

// a * b and a^b with the unit cases folded away
Term times(const Term& a, const Term& b)
{
    if (b.is_const(1))
        return a;
    if (a.is_const(1))
        return b;
    return a * b;
}

Term power_of(const Term& base, const Term& e)
{
    if (e.is_const(0))
        return Term(1);
    if (e.is_const(1))
        return base;
    return pow(base, e);
}

Term succ(const Term& t)
{
    if (t.is_const())
        return Term(Integer(t.value() + 1));
    return plus_const(t, 1);
}

Formula relation(const GadgetResult& g)
{
    return Formula::exists(g.vars(), g.as_formula());
}

} // namespace

// ------------------------------------------------------------------ PH^2

Ph2Artifacts build_ph2(const Ph2BuildOptions& opts)
{
    Ph2Artifacts art;
    art.params = {"k", "M", "a", "b", "r"};
    const Term k = var("k"), M = var("M"), a = var("a"), b = var("b"), r = var("r");
    const Term c = var("c"), d = var("d"), A = var("A"), X = var("X");
    const Term x = var("x"), y = var("y"), B = var("B"), C = var("C"), F = var("F");
    NameSupply ns;

    GadgetResult order = opts.literal ? g_less(ns, x, y) : g_less_equal(ns, y, x);
    relabel(order, {"v1"});
    GadgetResult remA = g_remainder(ns, A, c, d + 1);
    relabel(remA, {"v2", "v3"});
    GadgetResult remB = g_remainder(ns, B, c, d * (x + 1) + 1);
    relabel(remB, {"v4", "v5"});
    GadgetResult remC = g_remainder(ns, C, c, d * (y + 1) + 1);
    relabel(remC, {"v6", "v7"});
    GadgetResult lessBC = g_less(ns, B, C);
    relabel(lessBC, {"v8"});
    GadgetResult leCM = g_less_equal(ns, C, M);
    relabel(leCM, {"v9"});
    GadgetResult remF = g_remainder(ns, F, a, b * (B + square(C)) + 1);
    relabel(remF, {"v10", "v11"});
    GadgetResult cong = g_congruent(ns, F, X, r);
    relabel(cong, {"v12", "v13", "v14", "v15", "v16", "v17"});

    // e3: every pair of indices x < y of the coded set, relation by relation.
    const Term top = A + k - 2;
    std::vector<Formula> rels;
    for (const GadgetResult* g : {&remA, &remB, &remC, &lessBC, &leCM, &remF, &cong})
        rels.push_back(relation(*g));
    Formula e3_inner = Formula::exists({"B", "C", "F"}, Formula::conj(rels));
    if (opts.literal) {
        rels.insert(rels.begin(), relation(order));
        art.e3 = Formula::exists(
            {"c", "d", "A", "X"},
            Formula::forall("x", A + k - 3, false,
                            Formula::forall("y", top, false,
                                            Formula::exists({"B", "C", "F"}, Formula::conj(rels)))));
    } else {
        art.e3 = Formula::exists({"c", "d", "A", "X"},
                                 Formula::forall("y", top, false, Formula::forall("x", y, true, e3_inner)));
    }

    // e4: one equation under independent bounds on x and y.
    GadgetResult rest;
    for (GadgetResult* g : {&remA, &remB, &remC, &lessBC, &leCM, &remF, &cong})
        rest.append(*g);
    Term matrix;
    if (opts.literal) {
        GadgetResult all = order;
        all.append(rest);
        matrix = all.as_term();
    } else {
        // y <= x, or every relation holds
        matrix = order.equations().front() * rest.as_term();
    }
    std::vector<std::string> inner{"B", "C", "F"};
    for (auto& v : numbered("v", 1, 17))
        inner.push_back(v);
    art.e4 = Formula::exists(
        {"c", "d", "A", "X"},
        Formula::forall("x", A + k - 3, false,
                        Formula::forall("y", top, false, Formula::exists(inner, Formula::equation(matrix)))));

    CollapseNames cn;
    cn.z = "z";
    cn.t = "t";
    cn.slack1 = "v18";
    cn.slack2 = "v19";
    art.e6 = collapse_pair_quantifiers(art.e4, cn);

    BuqSplit split = split_buq(Document{art.params, art.e6});
    art.buq = split.inst;
    art.system = eliminate_buq(art.buq);
    art.P = art.system.poly;
    art.B = art.system.B;

    const Term w = var("w"), z = var("z");
    art.printed_B = [&] {
        Term w2 = 2 * w;
        Term inner_sum = 4 * square(w) + square(M + w2) + 2 * square(1 + 3 * w)
                         + square(square(2 + r) * square(w) + square(1 + r + w2))
                         + square(square(A + d + w) + square(A + c + w + d * w))
                         + 2 * square(square(d + w2 + d * w) + square(c + w * (2 + d + d * w)))
                         + square(square(w) * square(2 + b + b * w) + square(a + w * (2 + b * w * (1 + w))))
                         + square(square(1 + r + w2) + square(w + r * w + X));
        return square(1 + A + k + w2) * square(2 + A + k + w2) * square(inner_sum)
               + 4 * square(1 + w2 + 2 * square(w) + z)
               + square(11 + 4 * A + 4 * k + square(5 + 2 * A + 2 * k) + 2 * z);
    }();

    FlattenOptions fo;
    fo.carried = split.carried;
    fo.params = art.params;
    art.flat = flatten(art.system, ns, fo);

    std::map<std::string, std::string> names;
    names[art.flat.y1_block[0]] = "y1";
    names[art.flat.y1_block[1]] = "y2";
    for (std::size_t i = 0; i < 3; ++i)
        names[art.flat.j_block[i]] = "j" + std::to_string(i + 1);
    for (std::size_t i = 0; i < art.flat.h_block.size(); ++i)
        names[art.flat.h_block[i]] = "h" + std::to_string(i + 1);
    const char* roles[] = {"f", "g", "m", "s"};
    for (std::size_t l = 0; l < art.flat.divides_vars.size(); ++l)
        for (std::size_t role = 0; role < 4; ++role)
            names[art.flat.divides_vars[l][role]] = roles[role] + std::to_string(l + 1);
    art.display = names;

    Term equation = rename(art.flat.equation, names);
    if (opts.literal) {
        // (y1 + 1) 2^z in place of y1 2^z inside every divides-binomial block
        std::vector<Term> blocks;
        NameSupply lit;
        for (unsigned l = 1; l <= art.system.m; ++l) {
            GadgetResult g = g_div_binomial(lit, var("y1"), art.system.z[l], w, true);
            std::string s = std::to_string(l);
            relabel(g, {"f" + s, "g" + s, "m" + s, "s" + s});
            blocks.push_back(g.as_term());
        }
        std::vector<Term> all;
        for (const auto& t : art.flat.fixed_groups)
            all.push_back(rename(t, names));
        all.insert(all.end(), blocks.begin(), blocks.end());
        equation = Term::sum(all);
    }

    for (const auto& e : art.flat.ledger.entries()) {
        auto it = names.find(e.name);
        const std::string& shown = it == names.end() ? e.name : it->second;
        art.ledger.add(shown, e.origin);
        art.ledger.set_display_name(shown, shown);
    }
    art.final.params = art.params;
    art.final.formula = Formula::exists(art.ledger.names(), Formula::equation(equation));
    return art;
}

std::string ph2_latex(const Ph2Artifacts& art)
{
    std::ostringstream os;
    os << "\\exists ";
    bool first = true;
    for (const auto& n : art.ledger.names()) {
        os << (first ? "" : ",") << latex_identifier(n);
        first = false;
    }
    os << "\\;[\n";
    for (std::size_t i = 0; i < art.flat.fixed_groups.size(); ++i)
        os << (i ? "+ " : "") << emit(art.flat.fixed_groups[i], EmitFormat::Latex, art.display) << "\n";
    if (!art.flat.divides_groups.empty()) {
        NameMap generic = art.display;
        const char* roles[] = {"f", "g", "m", "s"};
        for (std::size_t role = 0; role < 4; ++role)
            generic[art.flat.divides_vars[0][role]] = std::string(roles[role]) + "_l";
        generic[art.system.z[1].name()] = "z_l";
        os << "+ \\sum_{l=1}^{" << art.flat.divides_groups.size() << "} "
           << emit(art.flat.divides_groups[0], EmitFormat::Latex, generic) << "\n";
    }
    os << "= 0]\n";
    return os.str();
}

// ------------------------------------------------------------------ Goodstein

GadgetResult g_elem(NameSupply& ns, const Term& c, const Term& n, const Term& base, const Term& j)
{
    GadgetResult r;
    Term hi = fresh(ns, r, "elem", "hi");
    Term lo = fresh(ns, r, "elem", "lo");
    Term v = fresh(ns, r, "elem", "digit-slack");
    Term v2 = fresh(ns, r, "elem", "low-slack");
    Term low = power_of(base, j);
    r.groups.push_back({hi * power_of(base, succ(j)) + times(c, low) + lo - n, plus_const(c + v, 1) - base,
                        low.is_const(1) ? lo + v2 : plus_const(lo + v2, 1) - low});
    return r;
}

Term g_disjunction(const std::vector<Term>& f1, const std::vector<Term>& f2)
{
    return sum_of_squares(f1) * sum_of_squares(f2);
}

GadgetResult g_HP(NameSupply& ns, const Term& l, const Term& n, const Term& base)
{
    GadgetResult r;
    Term above = fresh(ns, r, "hp", "above");
    Term below = fresh(ns, r, "hp", "below");
    Term nonzero = fresh(ns, r, "hp", "nonzero");
    std::vector<Term> positive{plus_const(n + above, 1) - pow(base, plus_const(l, 1)),
                               pow(base, l) + below - n, n - nonzero - 1};
    std::vector<Term> zero{n, l};
    r.groups.push_back({g_disjunction(positive, zero)});
    return r;
}

namespace {

// Quantifier blocks assembled from the outside in; the matrix gathers the
// equations of every block.
struct PrefixBuilder {
    struct Level {
        bool universal = false;
        std::string var;
        Term bound;
        std::vector<std::string> vars;
        std::vector<std::string> declared;
    };
    struct Piece {
        std::vector<std::string> vars;
        std::vector<Term> equations;
    };
    std::vector<Level> levels;
    std::vector<Piece> pieces;
    GadgetResult matrix;
    VarLedger ledger;

    void exists(const std::vector<std::string>& vs, const std::string& origin)
    {
        if (levels.empty() || levels.back().universal)
            levels.push_back({});
        for (const auto& v : vs) {
            levels.back().vars.push_back(v);
            levels.back().declared.push_back(v);
            ledger.add(v, origin);
        }
    }
    Term exists(const std::string& v, const std::string& origin)
    {
        exists(std::vector<std::string>{v}, origin);
        return var(v);
    }
    void forall(const std::string& v, const Term& bound)
    {
        levels.push_back({true, v, bound, {}, {}});
        ledger.add(v, "bounded-forall");
    }
    void add(GadgetResult g)
    {
        if (levels.empty() || levels.back().universal)
            levels.push_back({});
        Piece piece{g.vars(), g.equations()};
        for (const auto& e : g.ledger.entries()) {
            levels.back().vars.push_back(e.name);
            ledger.add(e.name, e.origin);
        }
        pieces.push_back(std::move(piece));
        g.ledger = {};
        matrix.append(std::move(g));
    }

    Formula build() const
    {
        Formula f = Formula::equation(matrix.as_term());
        for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
            if (it->universal)
                f = Formula::forall(it->var, it->bound, false, f);
            else if (!it->vars.empty())
                f = Formula::exists(it->vars, f);
        }
        return f;
    }

    // Same sentence with every gadget moved to the outermost existential block
    // below all the variables it reads, its equations conjoined there.
    Formula build_staged() const
    {
        std::map<std::string, std::size_t> depth;
        for (std::size_t i = 0; i < levels.size(); ++i) {
            if (levels[i].universal)
                depth[levels[i].var] = i;
            for (const auto& v : levels[i].declared)
                depth[v] = i;
        }
        std::vector<std::vector<std::string>> vars(levels.size());
        std::vector<std::vector<Term>> eqs(levels.size());
        for (std::size_t i = 0; i < levels.size(); ++i)
            vars[i] = levels[i].declared;
        for (const auto& p : pieces) {
            std::set<std::string> own(p.vars.begin(), p.vars.end());
            std::size_t at = 0;
            for (const auto& e : p.equations)
                for (const auto& v : free_vars(e))
                    if (!own.count(v) && depth.count(v))
                        at = std::max(at, depth.at(v));
            while (levels[at].universal)
                ++at;
            vars[at].insert(vars[at].end(), p.vars.begin(), p.vars.end());
            eqs[at].insert(eqs[at].end(), p.equations.begin(), p.equations.end());
        }
        std::optional<Formula> f;
        for (std::size_t i = levels.size(); i-- > 0;) {
            if (levels[i].universal) {
                f = Formula::forall(levels[i].var, levels[i].bound, false, *f);
                continue;
            }
            std::vector<Formula> parts;
            for (const auto& e : eqs[i])
                parts.push_back(Formula::equation(e));
            if (f)
                parts.push_back(*f);
            Formula body = parts.size() == 1 ? parts[0] : Formula::conj(std::move(parts));
            f = vars[i].empty() ? body : Formula::exists(vars[i], body);
        }
        return *f;
    }
};

// element index of the sequence coded by (b, d): rem(b, 1 + (index+1) d) = value
GadgetResult seq_at(NameSupply& ns, const Term& value, const Term& b, const Term& d, const Term& index)
{
    return g_remainder(ns, value, b, times(d, succ(index)) + 1);
}

PrefixedGadget unstaged(const GadgetResult& g)
{
    Formula f = relation(g);
    return {f, f, g.ledger};
}

PrefixedGadget finish(const PrefixBuilder& pb)
{
    return {pb.build(), pb.build_staged(), pb.ledger};
}

} // namespace

PrefixedGadget g_RB(NameSupply& ns, const Term& out, const Term& n, const Term& base)
{
    PrefixBuilder pb;
    Term next = plus_const(base, 1);
    Term l = pb.exists(ns.fresh("rb", "top"), "rb");
    Term b = pb.exists(ns.fresh("rb", "code-b"), "rb");
    Term d = pb.exists(ns.fresh("rb", "code-d"), "rb");
    Term k = var(ns.fresh("rb", "k"));
    pb.forall(k.name(), l);
    Term c = pb.exists(ns.fresh("rb", "digit"), "rb");
    Term c0 = pb.exists(ns.fresh("rb", "digit0"), "rb");
    Term ak = pb.exists(ns.fresh("rb", "partial"), "rb");
    pb.add(g_HP(ns, l, n, base));
    pb.add(g_elem(ns, c0, n, base, Term(0)));
    pb.add(seq_at(ns, c0, b, d, Term(0)));
    pb.add(seq_at(ns, ak, b, d, k));
    pb.add(seq_at(ns, ak + c * pow(next, plus_const(k, 1)), b, d, plus_const(k, 1)));
    pb.add(g_elem(ns, c, n, base, plus_const(k, 1)));
    pb.add(seq_at(ns, out, b, d, l));
    return finish(pb);
}

PrefixedGadget g_level(NameSupply& ns, const Term& L, const Term& n, const Term& base)
{
    PrefixBuilder pb;
    Term b = pb.exists(ns.fresh("level", "code-b"), "level");
    Term d = pb.exists(ns.fresh("level", "code-d"), "level");
    Term k = var(ns.fresh("level", "k"));
    pb.forall(k.name(), L);
    Term ak = pb.exists(ns.fresh("level", "a-k"), "level");
    Term an = pb.exists(ns.fresh("level", "a-next"), "level");
    Term last = pb.exists(ns.fresh("level", "a-last"), "level");
    Term prev = pb.exists(ns.fresh("level", "a-prev"), "level");
    pb.add(seq_at(ns, n, b, d, Term(0)));
    pb.add(seq_at(ns, ak, b, d, k));
    pb.add(seq_at(ns, an, b, d, plus_const(k, 1)));
    pb.add(g_HP(ns, an, ak, base));
    pb.add(seq_at(ns, last, b, d, L));
    pb.add(g_less(ns, last, base));
    // a_{L-1} >= base unless L = 0; a_{L-1} = rem(b, 1 + L d)
    GadgetResult prev_rem = g_remainder(ns, prev, b, d * L + 1);
    pb.add(prev_rem);
    GadgetResult ge;
    Term slack = fresh(ns, ge, "level", "prev-slack");
    ge.groups.push_back({g_disjunction({base + slack - prev}, {L})});
    pb.add(ge);
    return finish(pb);
}

GadgetResult g_exp_k(NameSupply& ns, const Term& p, const Term& s, const Term& m, const Term& base,
                     const Term& k)
{
    GadgetResult r;
    Term c = fresh(ns, r, "exp", "coefficient");
    Term y = fresh(ns, r, "exp", "rest");
    r.groups.push_back({c * pow(plus_const(base, 1), p) + y - s});
    r.append(g_elem(ns, c, m, base, k));
    return r;
}

namespace {

// Adds the blocks of out = T(n) to an enclosing prefix. The table t_x = T(x),
// x <= n, is coded by (b, d); the partial sums of one row by (bt, dt).
void bump_blocks(PrefixBuilder& pb, NameSupply& ns, const Term& out, const Term& n, const Term& base,
                 const std::string& tag)
{
    Term next = plus_const(base, 1);
    Term b = pb.exists(ns.fresh(tag, "table-b"), tag);
    Term d = pb.exists(ns.fresh(tag, "table-d"), tag);
    pb.add(seq_at(ns, out, b, d, n));

    Term x = var(ns.fresh(tag, "x"));
    pb.forall(x.name(), n);
    Term l = pb.exists(ns.fresh(tag, "top"), tag);
    Term tx = pb.exists(ns.fresh(tag, "t-x"), tag);
    Term bt = pb.exists(ns.fresh(tag, "row-b"), tag);
    Term dt = pb.exists(ns.fresh(tag, "row-d"), tag);
    Term c0 = pb.exists(ns.fresh(tag, "digit0"), tag);
    Term t0 = pb.exists(ns.fresh(tag, "t-0"), tag);
    pb.add(g_HP(ns, l, x, base));
    pb.add(seq_at(ns, tx, b, d, x));
    pb.add(seq_at(ns, tx, bt, dt, l));
    pb.add(g_elem(ns, c0, x, base, Term(0)));
    pb.add(seq_at(ns, t0, b, d, Term(0)));
    pb.add(seq_at(ns, c0 * pow(next, t0), bt, dt, Term(0)));

    Term k = var(ns.fresh(tag, "k"));
    pb.forall(k.name(), l);
    Term c = pb.exists(ns.fresh(tag, "digit"), tag);
    Term e = pb.exists(ns.fresh(tag, "t-k1"), tag);
    Term tau = pb.exists(ns.fresh(tag, "partial"), tag);
    pb.add(g_elem(ns, c, x, base, plus_const(k, 1)));
    pb.add(seq_at(ns, e, b, d, plus_const(k, 1)));
    pb.add(seq_at(ns, tau, bt, dt, k));
    pb.add(seq_at(ns, tau + c * pow(next, e), bt, dt, plus_const(k, 1)));
}

} // namespace

PrefixedGadget g_bump(NameSupply& ns, const Term& out, const Term& n, const Term& base)
{
    PrefixBuilder pb;
    bump_blocks(pb, ns, out, n, base, "bump");
    return finish(pb);
}

namespace {

std::vector<std::string> expand_names(const std::string& spec)
{
    // "w5..w17" style ranges
    std::vector<std::string> out;
    std::istringstream is(spec);
    std::string tok;
    while (is >> tok) {
        auto dots = tok.find("..");
        if (dots == std::string::npos) {
            out.push_back(tok);
            continue;
        }
        std::string lhs = tok.substr(0, dots), rhs = tok.substr(dots + 2);
        std::size_t i = lhs.find_first_of("0123456789");
        std::string stem = lhs.substr(0, i);
        unsigned from = static_cast<unsigned>(std::stoul(lhs.substr(i)));
        unsigned to = static_cast<unsigned>(std::stoul(rhs.substr(stem.size())));
        for (auto& n : numbered(stem, from, to))
            out.push_back(n);
    }
    return out;
}

} // namespace

std::vector<DisplayBlock> goodstein_display_prefix()
{
    const std::pair<char, const char*> blocks[] = {
        {'E', "r b1 d1"},
        {'A', "i"},
        {'E', "v1 v14 v15 v16 h1 h2 h3 h4 w3 w4 p1 p2 L"},
        {'A', "n"},
        {'E', "v2 v3 v4 v5 v6 v8 v12 v13 w1 w2 w5..w17 j1..j6 e1 e2 u1 u2 u3"},
        {'A', "u5"},
        {'E', "u4 u6..u30 l"},
        {'A', "k"},
        {'E', "v7 c d d' v9 v10 f d'' d''' h5..h14"},
        {'A', "h15"},
        {'E', "h16..h41 j7..j24"},
        {'A', "j25"},
        {'E', "j26..j51 q1..q9"},
    };
    std::vector<DisplayBlock> out;
    for (const auto& [q, spec] : blocks)
        out.push_back({q, expand_names(spec)});
    return out;
}

GoodsteinArtifacts build_goodstein()
{
    GoodsteinArtifacts art;
    art.params = {"m", "a"};
    const Term m = var("m"), a = var("a");
    NameSupply ns;

    {
        NameSupply local;
        Term base = var("beta");
        GadgetResult e = g_elem(local, var("c"), var("n"), base, var("j"));
        art.elem = unstaged(e);
        GadgetResult h = g_HP(local, var("l"), var("n"), base);
        art.hp = unstaged(h);
        art.rb = g_RB(local, var("n'"), var("n"), base);
        art.level = g_level(local, var("L"), var("n"), base);
        GadgetResult x = g_exp_k(local, var("p"), var("s"), var("m"), base, var("k"));
        art.exp_k = unstaged(x);
        art.bump = g_bump(local, var("n'"), var("n"), base);
    }

    PrefixBuilder pb;
    Term r = pb.exists("r", "goodstein");
    Term b1 = pb.exists("b1", "goodstein");
    Term d1 = pb.exists("d1", "goodstein");
    Term i = var("i");
    pb.forall("i", r);
    Term base = i + a;
    Term mi = pb.exists("m_i", "goodstein");
    Term mnext = pb.exists("m_next", "goodstein");
    // m_0 = m, m_{r+1} = 0, m_{i+1} = T(m_i) - 1
    pb.add(seq_at(ns, m, b1, d1, Term(0)));
    pb.add(seq_at(ns, Term(0), b1, d1, plus_const(r, 1)));
    pb.add(seq_at(ns, mi, b1, d1, i));
    pb.add(seq_at(ns, mnext, b1, d1, plus_const(i, 1)));
    bump_blocks(pb, ns, plus_const(mnext, 1), mi, base, "bump");

    // short names: table roles by meaning, auxiliary unknowns as u1, u2, ...
    const std::map<std::string, std::string> roles{
        {"table-b", "b2"}, {"table-d", "d2"}, {"x", "x"},   {"top", "l"},   {"t-x", "tx"},
        {"row-b", "b3"},   {"row-d", "d3"},   {"digit0", "c"}, {"t-0", "t0"}, {"k", "k"},
        {"digit", "f"},    {"t-k1", "e"},     {"partial", "tau"}};
    std::map<std::string, std::string> short_names;
    unsigned aux = 0;
    for (const auto& e : pb.ledger.entries()) {
        auto at = e.name.find('@');
        if (at == std::string::npos)
            continue;
        auto dot = e.name.find('.');
        std::string origin = e.name.substr(0, dot);
        std::string role = e.name.substr(dot + 1, at - dot - 1);
        auto it = roles.find(role);
        short_names[e.name] = origin == "bump" && it != roles.end() ? it->second : "u" + std::to_string(++aux);
    }
    art.final.params = art.params;
    art.final.formula = rename(pb.build(), short_names);
    art.staged = rename(pb.build_staged(), short_names);
    for (const auto& e : pb.ledger.entries()) {
        auto it = short_names.find(e.name);
        art.ledger.add(it == short_names.end() ? e.name : it->second, e.origin);
    }
    for (const auto& [ours, theirs] : std::vector<std::pair<std::string, std::string>>{
             {"r", "r"}, {"b1", "b1"}, {"d1", "d1"}, {"i", "i"}, {"m_i", "v1"}, {"m_next", "v14"},
             {"l", "l"}, {"k", "k"}, {"c", "c"}, {"f", "f"}})
        art.ledger.set_display_name(ours, theirs);

    std::ostringstream shape;
    for (std::size_t li = 0; li < pb.levels.size(); ++li) {
        const auto& lv = pb.levels[li];
        shape << (li ? " " : "") << (lv.universal ? "A1" : "E" + std::to_string(lv.vars.size()));
    }
    art.shape = shape.str();

    GoodsteinErratum& er = art.erratum;
    er.display_prefix = goodstein_display_prefix();
    for (const auto& blk : er.display_prefix)
        er.display_total += blk.vars.size();
    er.our_total = art.ledger.total();
    er.unbound_in_display = {"b2", "b3", "b4", "d2", "d3", "d4"};
    er.issues = {
        "summands (u14+1)^2, (h9+1)^2, (h25+1)^2, (j11+1)^2 and (j35+1)^2 are at least 1, so the "
        "printed equation has no solution",
        "b2, b3, b4, d2, d3, d4 occur in the matrix but not in the prefix",
        "with i <= r the step at i = r asks for G(m_r) with m_r = 0; the rebuild uses m_{r+1} = 0",
        "Exp_k(s_n) only asks for c (i+a+1)^p <= s_n, which does not determine p",
        "RB applied to an exponent already rewritten in base i+a+1 reads it in the wrong base; the "
        "rebuild tabulates T(x) for all x <= m_i instead of iterating levels",
        "the highest-power disjunct squares (i+a)^l where n >= (i+a)^l is meant",
    };
    return art;
}

std::string erratum_report(const GoodsteinArtifacts& art)
{
    const GoodsteinErratum& er = art.erratum;
    std::ostringstream os;
    os << "display total: " << er.display_total << "\n";
    os << "rebuilt total: " << er.our_total << "\n";
    os << "difference: " << static_cast<long>(er.our_total) - static_cast<long>(er.display_total) << "\n";
    os << "display blocks:";
    for (const auto& b : er.display_prefix)
        os << " " << b.quantifier << b.vars.size();
    os << "\nrebuilt blocks: " << art.shape << "\n";
    os << "unbound in display:";
    for (const auto& u : er.unbound_in_display)
        os << " " << u;
    os << "\nissues:\n";
    for (const auto& s : er.issues)
        os << "  - " << s << "\n";
    std::set<std::string> ours;
    for (const auto& e : art.ledger.entries())
        if (!e.display_name.empty())
            ours.insert(e.display_name);
    os << "display variables with a rebuilt counterpart:";
    for (const auto& n : ours)
        os << " " << n;
    os << "\n";
    return os.str();
}

} // namespace eppe
