#include "eppe/harness.hpp"

#include "eppe/check.hpp"
#include "eppe/errors.hpp"
#include "eppe/gadgets.hpp"
#include "eppe/io.hpp"
#include "eppe/oracles.hpp"
#include "eppe/pipelines.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace eppe {

RangeSpec parse_range(const std::string& text)
{
    auto eq = text.find('=');
    auto dots = text.find("..");
    if (eq == std::string::npos || dots == std::string::npos || dots < eq)
        throw ParseError(1, 1, "range must look like name=lo..hi: " + text);
    RangeSpec r;
    r.name = text.substr(0, eq);
    r.lo = parse_term(text.substr(eq + 1, dots - eq - 1));
    r.hi = parse_term(text.substr(dots + 2));
    if (r.name.empty())
        throw ParseError(1, 1, "range without a name: " + text);
    return r;
}

namespace {

struct Outcome {
    std::string value;
    bool exact = true;
    std::string strategy;
    Assignment witness;
};

using Decide = std::function<Outcome(const Assignment&, const HarnessOptions&)>;
using Oracle = std::function<std::string(const Assignment&)>;

struct Entry {
    GadgetInfo info;
    Decide decide;
    Oracle oracle;
    std::function<bool(const Assignment&)> flag;
};

const char* yes(bool b) { return b ? "1" : "0"; }

Formula conj_of(const GadgetResult& g)
{
    std::vector<Formula> parts;
    for (const auto& e : g.equations())
        parts.push_back(Formula::equation(e));
    return parts.size() == 1 ? parts[0] : Formula::conj(parts);
}

bool all_zero(const GadgetResult& g, const Assignment& env, const EvalLimits& limits)
{
    for (const auto& e : g.equations())
        if (eval_term(e, env, limits) != 0)
            return false;
    return true;
}

std::string role_var(const GadgetResult& g, const std::string& role)
{
    for (const auto& n : g.vars())
        if (n.find("." + role + "@") != std::string::npos)
            return n;
    throw InvalidArgument("gadget has no unknown with role " + role);
}

Integer power(const Integer& b, const Integer& e, const EvalLimits& limits)
{
    return eval_term(pow(Term(b), Term(e)), {}, limits);
}

// Predicate gadgets decided by bounded search over their unknowns.
Outcome by_search(const GadgetResult& g, const Assignment& params, const HarnessOptions& opts)
{
    CheckOptions co;
    co.limits = opts.limits;
    co.node_limit = opts.node_limit;
    Formula f = Formula::exists(g.vars(), conj_of(g));
    Verdict v = check_sentence(f, params, opts.search_bound, co);
    Outcome o;
    o.strategy = "search";
    o.exact = v != Verdict::Unknown;
    o.value = yes(v == Verdict::Holds);
    o.witness = params;
    if (v == Verdict::Holds)
        if (auto w = find_witness(f, params, opts.search_bound, co))
            o.witness.insert(w->begin(), w->end());
    return o;
}

// The determined assignment satisfies the gadget or nothing does.
Outcome by_determination(const GadgetResult& g, Assignment env, const HarnessOptions& opts,
                         std::string value_if_solved, std::string value_if_not = "0")
{
    Outcome o;
    o.strategy = "determined";
    o.value = all_zero(g, env, opts.limits) ? std::move(value_if_solved) : std::move(value_if_not);
    o.witness = std::move(env);
    return o;
}

Outcome decide_div_binom(const Assignment& p, const HarnessOptions& opts, bool literal)
{
    NameSupply ns;
    GadgetResult g = g_div_binomial(ns, var("y1"), var("z"), var("w"), literal);
    const Integer& y1 = p.at("y1");
    Integer u = eval_term(div_binomial_base(var("y1"), var("z"), literal), p, opts.limits);
    Integer top = power(u + 1, p.at("z"), opts.limits);
    Integer uw = power(u, p.at("w"), opts.limits);
    Assignment env = p;
    Integer quotient = top / uw;
    env[role_var(g, "p")] = quotient;
    env[role_var(g, "rest")] = top % uw;
    env[role_var(g, "slack")] = uw - top % uw - 1;
    env[role_var(g, "quot")] = y1 == 0 ? Integer(0) : quotient / y1;
    return by_determination(g, env, opts, "1");
}

Outcome decide_binom_exp(const Assignment& p, const HarnessOptions& opts)
{
    NameSupply ns;
    GadgetResult g = g_binomial_expdioph(ns, var("y"), var("n"), var("s"));
    const Integer& n = p.at("n");
    const Integer& s = p.at("s");
    Integer u = power(2, n, opts.limits) + 1;
    Integer top = power(u + 1, n, opts.limits);
    Integer hi_mod = power(u, s + 1, opts.limits);
    Integer lo_mod = power(u, s, opts.limits);
    Integer rest = top % hi_mod;
    Integer y = rest / lo_mod;
    Assignment env = p;
    env["y"] = y;
    env[role_var(g, "hi")] = top / hi_mod;
    env[role_var(g, "lo")] = rest % lo_mod;
    env[role_var(g, "lslack")] = lo_mod - rest % lo_mod - 1;
    env[role_var(g, "dslack")] = u - y - 1;
    return by_determination(g, env, opts, y.get_str(), "none");
}

Outcome decide_elem(const Assignment& p, const HarnessOptions& opts)
{
    NameSupply ns;
    GadgetResult g = g_elem(ns, var("c"), var("n"), var("base"), var("j"));
    const Integer& n = p.at("n");
    const Integer& base = p.at("base");
    Integer low = power(base, p.at("j"), opts.limits);
    Integer high = low * base;
    Integer c = n % high / low;
    Assignment env = p;
    env["c"] = c;
    env[role_var(g, "hi")] = n / high;
    env[role_var(g, "lo")] = n % low;
    env[role_var(g, "digit-slack")] = base - c - 1;
    env[role_var(g, "low-slack")] = low - n % low - 1;
    return by_determination(g, env, opts, c.get_str(), "none");
}

// Every l <= 64 for which the highest-power gadget is solvable. Off the
// n = l = 0 branch the unknowns are forced, so a negative value means no solution.
Outcome decide_hp(const Assignment& p, const HarnessOptions& opts)
{
    NameSupply ns;
    GadgetResult g = g_HP(ns, var("l"), var("n"), var("base"));
    const Integer& n = p.at("n");
    const Integer& base = p.at("base");
    Outcome o;
    o.strategy = "determined";
    o.witness = p;
    std::string list;
    for (long l = 0; l <= 64; ++l) {
        Assignment env = p;
        env["l"] = l;
        Integer low = power(base, l, opts.limits);
        Integer forced[] = {low * base - n - 1, n - low, n - 1};
        bool trivial = n == 0 && l == 0;
        bool ok = trivial || std::all_of(std::begin(forced), std::end(forced), [](const Integer& v) { return v >= 0; });
        if (!ok)
            continue;
        auto names = g.vars();
        for (std::size_t i = 0; i < names.size(); ++i)
            env[names[i]] = trivial ? Integer(0) : forced[i];
        if (all_zero(g, env, opts.limits)) {
            list += (list.empty() ? "" : ",") + std::to_string(l);
            o.witness = env;
        }
    }
    o.value = list.empty() ? "none" : list;
    return o;
}

Outcome decide_cantor(const Assignment& p, const HarnessOptions& opts)
{
    Formula f = Formula::exists({"z"}, Formula::equation(cantor_equation(var("z"), var("m"), var("n"))));
    CheckOptions co;
    co.limits = opts.limits;
    auto w = find_witness(f, p, opts.search_bound, co);
    Outcome o;
    o.strategy = "search";
    o.value = w ? w->at("z").get_str() : "none";
    o.witness = p;
    if (w)
        o.witness.insert(w->begin(), w->end());
    return o;
}

// Pell witnesses for i, j up to the index limit; a miss is not conclusive.
Outcome decide_psi(const Assignment& p, const HarnessOptions& opts)
{
    NameSupply ns;
    GadgetResult g = g_psi(ns, var("A"), var("B"), var("C"));
    auto names = g.vars();
    Outcome o;
    o.strategy = "pell-chain";
    o.witness = p;
    const Integer &A = p.at("A"), &B = p.at("B"), &C = p.at("C");
    for (unsigned i = 0; i <= opts.pell_index_limit; ++i)
        for (unsigned j = 0; j <= opts.pell_index_limit; ++j) {
            PellWitness w = pell_chain(A, B, C, i, j);
            Integer dfi = w.D * w.F * w.I;
            if (mpz_perfect_square_p(dfi.get_mpz_t()) == 0 || w.H < C || (w.H - C) % w.F != 0 || B > C)
                continue;
            Integer s;
            mpz_sqrt(s.get_mpz_t(), dfi.get_mpz_t());
            Assignment env = p;
            const Integer values[] = {w.D, w.E, w.F, w.G, w.H, w.I, Integer(i), Integer(j), s,
                                      (w.H - C) / w.F, C - B};
            for (std::size_t k = 0; k < names.size(); ++k)
                env[names[k]] = values[k];
            if (all_zero(g, env, opts.limits)) {
                o.value = "1";
                o.witness = env;
                return o;
            }
        }
    o.value = "0";
    o.exact = false;
    return o;
}

bool is_square(const Integer& v) { return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0; }

Outcome decide_relation_combine(const Assignment& p, const HarnessOptions& opts)
{
    Term m = relation_combine({{var("A")}, var("B"), var("C"), var("D"), var("n"), std::nullopt});
    CheckOptions co;
    co.limits = opts.limits;
    co.node_limit = opts.node_limit;
    Formula f = Formula::exists({"n"}, Formula::equation(m));
    Verdict v = check_sentence(f, p, opts.search_bound, co);
    Outcome o;
    o.strategy = "roots";
    o.exact = v != Verdict::Unknown;
    o.value = yes(v == Verdict::Holds);
    o.witness = p;
    if (v == Verdict::Holds)
        if (auto w = find_witness(f, p, opts.search_bound, co))
            o.witness.insert(w->begin(), w->end());
    return o;
}

Outcome decide_strong_ineq(const Assignment& p, const HarnessOptions& opts)
{
    NameSupply ns;
    GadgetResult g = g_strong_ineq(ns, var("q"), var("b"), var("B"), var("w"), 1);
    Integer bound = eval_term(strong_ineq_bound(var("b"), var("B"), var("w"), 1), p, opts.limits);
    Integer slack = p.at("q") - bound - 1;
    if (slack < 0)
        return {"0", true, "determined", p};
    Assignment env = p;
    env[g.vars().front()] = slack;
    return by_determination(g, env, opts, "1");
}

Term b_bound_polynomial() { return square(var("x")) - 3 * var("x") * var("y") + var("y") - 2; }

// |G(x, y)| against the majorant over the whole box [0, X] x [0, Y].
Outcome decide_b_bound(const Assignment& p, const HarnessOptions& opts)
{
    Term B = build_B_bound(b_bound_polynomial(), {{"x", var("X")}, {"y", var("Y")}}, {});
    Integer bound = eval_term(B, p, opts.limits);
    Outcome o;
    o.strategy = "exhaustive";
    o.witness = p;
    o.value = "1";
    for (Integer x = 0; x <= p.at("X"); ++x)
        for (Integer y = 0; y <= p.at("Y"); ++y) {
            Integer g = eval_term(b_bound_polynomial(), {{"x", x}, {"y", y}}, opts.limits);
            if (abs(g) > bound) {
                o.value = "0";
                o.witness["x"] = x;
                o.witness["y"] = y;
                return o;
            }
        }
    return o;
}

// Digit part of the 18-unknown representation: y = rem(w + 1, x) with
// w + 1 the partial expansion at x = 4 n^s + 1. The Pell block has no
// desk-scale witness and is not evaluated.
Outcome decide_binom_dioph(const Assignment& p, const HarnessOptions& opts)
{
    NameSupply ns;
    GadgetResult g = g_binomial_dioph(ns, var("y"), var("n"), var("s"));
    auto names = g.vars();
    const Integer& n = p.at("n");
    unsigned s = static_cast<unsigned>(p.at("s").get_ui());
    Integer x = 4 * power(n, s, opts.limits) + 1;
    Integer w1 = partial_binom(x, static_cast<unsigned>(n.get_ui()), s);
    Integer y = w1 % x;
    Assignment env = p;
    env["y"] = y;
    env[names[0]] = x;
    env[names[1]] = w1 - 1;
    env[names[7]] = x - y - 1;
    env[names[8]] = w1 / x;
    Outcome o;
    o.strategy = "digit-part";
    o.witness = env;
    bool ok = true;
    for (const auto& e : g.groups[0])
        ok = ok && eval_term(e, env, opts.limits) == 0;
    o.value = ok ? y.get_str() : "none";
    return o;
}

// --- PH^2 at desk scale ----------------------------------------------------

using Coloring = std::vector<std::vector<unsigned>>;

template <class F>
void for_each_coloring(unsigned r, unsigned M, F&& f)
{
    const unsigned n = M + 1;
    std::vector<std::pair<unsigned, unsigned>> pairs;
    for (unsigned x = 0; x < n; ++x)
        for (unsigned y = x + 1; y < n; ++y)
            pairs.emplace_back(x, y);
    Coloring c(n, std::vector<unsigned>(n, 0));
    std::vector<unsigned> digits(pairs.size(), 0);
    while (true) {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            c[pairs[i].first][pairs[i].second] = c[pairs[i].second][pairs[i].first] = digits[i];
        if (!f(c))
            return;
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == r)
            digits[i++] = 0;
        if (i == digits.size())
            return;
    }
}

const Ph2Artifacts& ph2_build()
{
    static const Ph2Artifacts art = build_ph2();
    return art;
}

// Some coded set passes the body of e3 for this coloring. Any witness of e3
// codes an increasing sequence in [0, M], so trying the prefixes of all
// subsets decides the sentence.
bool e3_holds(const Coloring& col, unsigned k, unsigned r, unsigned M, const HarnessOptions& opts,
              bool& exact)
{
    const Formula& body = ph2_build().e3.body();
    auto [a, b] = encode_coloring(col);
    const unsigned n = M + 1;
    CheckOptions co;
    co.limits = opts.limits;
    co.node_limit = opts.node_limit;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<Integer> ys;
        for (unsigned i = 0; i < n; ++i)
            if (mask >> i & 1)
                ys.push_back(i);
        long want = ys.front().get_si() + static_cast<long>(k) - 1;
        if (want > static_cast<long>(ys.size()))
            continue;
        ys.resize(static_cast<std::size_t>(std::max(want, 1L)));
        auto [c, d] = godel_encode(ys);
        Integer X = ys.size() >= 2 ? Integer(col[ys[0].get_ui()][ys[1].get_ui()]) : Integer(0);
        Assignment env{{"k", k}, {"M", M}, {"a", a}, {"b", b}, {"r", r},
                       {"c", c}, {"d", d}, {"A", ys.front()}, {"X", X}};
        // quotients of the two codes reach a and c
        Integer bound = std::max(opts.search_bound, Integer(a + c + 1));
        Verdict v = check_sentence(body, env, bound, co);
        if (v == Verdict::Holds)
            return true;
        if (v == Verdict::Unknown)
            exact = false;
    }
    return false;
}

Outcome decide_ph2(const Assignment& p, const HarnessOptions& opts)
{
    unsigned k = static_cast<unsigned>(p.at("k").get_ui());
    unsigned r = static_cast<unsigned>(p.at("r").get_ui());
    unsigned M = static_cast<unsigned>(p.at("M").get_ui());
    if (r == 0)
        throw InvalidArgument("ph2 needs r >= 1");
    double count = std::pow(double(r), double((M + 1) * M / 2));
    if (count > double(1 << 16))
        throw BudgetExceeded("too many colorings for the ph2 gadget");
    Outcome o;
    o.strategy = "coded-subsets";
    o.witness = p;
    bool all = true;
    bool sound = true;
    for_each_coloring(r, M, [&](const Coloring& c) {
        bool holds = e3_holds(c, k, r, M, opts, o.exact);
        if (holds && !ph2_homogeneous(c, k))
            sound = false;
        all = all && holds;
        return all;
    });
    // a coloring certified by e3 without a homogeneous set shows up as "1" against "0"
    o.value = yes(all || !sound);
    return o;
}

std::vector<Entry>& registry()
{
    static std::vector<Entry> entries = [] {
        std::vector<Entry> e;
        auto pred = [](std::function<GadgetResult(NameSupply&)> build) {
            return [build](const Assignment& p, const HarnessOptions& opts) {
                NameSupply ns;
                return by_search(build(ns), p, opts);
            };
        };
        e.push_back({{"remainder", {"y", "a", "D"}, {"y=0..6", "a=0..20", "D=0..6"}, false, false,
                      "y = rem(a, D)"},
                     pred([](NameSupply& ns) { return g_remainder(ns, var("y"), var("a"), var("D")); }),
                     [](const Assignment& p) {
                         const Integer& D = p.at("D");
                         return yes(D > 0 && p.at("y") == p.at("a") % D);
                     },
                     nullptr});
        e.push_back({{"less", {"a", "b"}, {"a=0..15", "b=0..15"}, false, false, "a < b"},
                     pred([](NameSupply& ns) { return g_less(ns, var("a"), var("b")); }),
                     [](const Assignment& p) { return yes(p.at("a") < p.at("b")); }, nullptr});
        e.push_back({{"divides", {"b", "c"}, {"b=0..10", "c=0..30"}, false, false, "b | c"},
                     pred([](NameSupply& ns) { return g_divides(ns, var("b"), var("c")); }),
                     [](const Assignment& p) {
                         const Integer &b = p.at("b"), &c = p.at("c");
                         return yes(b == 0 ? c == 0 : c % b == 0);
                     },
                     nullptr});
        e.push_back({{"congruent", {"x", "y", "r"}, {"x=0..12", "y=0..12", "r=1..5"}, false, false,
                      "x = y (mod r)"},
                     pred([](NameSupply& ns) { return g_congruent(ns, var("x"), var("y"), var("r")); }),
                     [](const Assignment& p) {
                         const Integer& r = p.at("r");
                         return yes(p.at("x") % r == p.at("y") % r);
                     },
                     nullptr});
        e.push_back({{"cantor", {"m", "n"}, {"m=0..12", "n=0..12"}, false, false, "z = J(m, n)"},
                     decide_cantor,
                     [](const Assignment& p) { return cantor_J(p.at("m"), p.at("n")).get_str(); },
                     nullptr});
        e.push_back({{"psi-system", {"A", "B", "C"}, {"A=2..3", "B=1..3", "C=1..40"}, false, true,
                      "C = psi_A(B)"},
                     decide_psi,
                     [](const Assignment& p) {
                         return yes(p.at("C") == psi(p.at("A"), static_cast<unsigned>(p.at("B").get_ui())));
                     },
                     nullptr});
        e.push_back({{"binom-exp", {"n", "s"}, {"n=1..12", "s=0..n"}, false, false, "y = C(n, s)"},
                     decide_binom_exp,
                     [](const Assignment& p) {
                         return binomial(static_cast<unsigned>(p.at("n").get_ui()),
                                         static_cast<unsigned>(p.at("s").get_ui()))
                             .get_str();
                     },
                     nullptr});
        e.push_back({{"relation-combine", {"A", "B", "C", "D"}, {"A=0..17", "B=1..3", "C=0..6", "D=0..2"}, false,
                      false, "A square, B | C and D > 0"},
                     decide_relation_combine,
                     [](const Assignment& p) {
                         return yes(is_square(p.at("A")) && p.at("C") % p.at("B") == 0 && p.at("D") > 0);
                     },
                     nullptr});
        e.push_back({{"binom-dioph", {"n", "s"}, {"n=1..8", "s=1..n"}, false, false,
                      "y = C(n, s), digit part only"},
                     decide_binom_dioph,
                     [](const Assignment& p) {
                         return binomial(static_cast<unsigned>(p.at("n").get_ui()),
                                         static_cast<unsigned>(p.at("s").get_ui()))
                             .get_str();
                     },
                     nullptr});
        e.push_back({{"strong-ineq", {"q", "b", "B", "w"}, {"q=0..80", "b=0..1", "B=0..2", "w=0..2"}, false,
                      false, "q > b + (b+1)^(b+1) ((b+1)^(b+1) B)^w"},
                     decide_strong_ineq,
                     [](const Assignment& p) {
                         const Integer &b = p.at("b"), &B = p.at("B");
                         Integer lead, inner;
                         mpz_pow_ui(lead.get_mpz_t(), Integer(b + 1).get_mpz_t(), b.get_ui() + 1);
                         mpz_pow_ui(inner.get_mpz_t(), Integer(lead * B).get_mpz_t(), p.at("w").get_ui());
                         return yes(p.at("q") > b + lead * inner);
                     },
                     nullptr});
        e.push_back({{"b-bound", {"X", "Y"}, {"X=0..12", "Y=0..12"}, false, false,
                      "|x^2 - 3xy + y - 2| <= B(X, Y) on the box"},
                     decide_b_bound, [](const Assignment&) { return std::string("1"); }, nullptr});
        auto divides_binomial = [](const Assignment& p) {
            Integer c = binomial(static_cast<unsigned>(p.at("z").get_ui()),
                                 static_cast<unsigned>(p.at("w").get_ui()));
            return yes(c % p.at("y1") == 0);
        };
        e.push_back({{"div-binom", {"y1", "z", "w"}, {"y1=1..10", "z=1..8", "w=0..z"}, false, false,
                      "y1 | C(z, w)"},
                     [](const Assignment& p, const HarnessOptions& o) { return decide_div_binom(p, o, false); },
                     divides_binomial, nullptr});
        e.push_back({{"div-binom-literal", {"y1", "z", "w"}, {"y1=1..10", "z=1..8", "w=0..z"}, true,
                      false, "y1 | C(z, w) with the base (y1 + 1) 2^z"},
                     [](const Assignment& p, const HarnessOptions& o) { return decide_div_binom(p, o, true); },
                     divides_binomial, nullptr});
        e.push_back({{"elem", {"n", "base", "j"}, {"n=0..200", "base=2..5", "j=0..4"}, false, false,
                      "c = digit j of n"},
                     decide_elem,
                     [](const Assignment& p) {
                         return digit(p.at("n"), p.at("base"), p.at("j").get_ui()).get_str();
                     },
                     nullptr});
        e.push_back({{"hp", {"n", "base"}, {"n=0..200", "base=2..5"}, false, false,
                      "l = highest power of base in n"},
                     decide_hp,
                     [](const Assignment& p) {
                         const Integer& n = p.at("n");
                         return n == 0 ? std::string("0") : std::to_string(highest_power(n, p.at("base")));
                     },
                     nullptr});
        e.push_back({{"ph2-e3", {"k", "r", "M"}, {"k=1..4", "r=1..2", "M=1..4"}, false, true,
                      "e3 holds for every r-coloring of the pairs of [0, M]"},
                     decide_ph2,
                     [](const Assignment& p) {
                         return yes(ph2_check(static_cast<unsigned>(p.at("k").get_ui()),
                                              static_cast<unsigned>(p.at("r").get_ui()),
                                              static_cast<unsigned>(p.at("M").get_ui())));
                     },
                     [](const Assignment& p) { return p.at("r") <= 2; }});
        return e;
    }();
    return entries;
}

const Entry& entry(const std::string& name)
{
    for (const auto& e : registry())
        if (e.info.name == name)
            return e;
    throw InvalidArgument("unknown gadget: " + name);
}

void enumerate(const std::vector<RangeSpec>& ranges, std::size_t i, Assignment& env,
               std::vector<Assignment>& out)
{
    if (i == ranges.size()) {
        out.push_back(env);
        return;
    }
    Integer lo = eval_term(ranges[i].lo, env);
    Integer hi = eval_term(ranges[i].hi, env);
    for (Integer v = lo; v <= hi; ++v) {
        env[ranges[i].name] = v;
        enumerate(ranges, i + 1, env, out);
    }
    env.erase(ranges[i].name);
}

TupleRecord evaluate(const Entry& e, const Assignment& params, const HarnessOptions& opts)
{
    TupleRecord rec;
    rec.params = params;
    Outcome o = e.decide(params, opts);
    rec.gadget = o.value;
    rec.exact = o.exact;
    rec.strategy = o.strategy;
    rec.witness = std::move(o.witness);
    rec.oracle = e.oracle(params);
    rec.flagged = e.flag && e.flag(params);
    rec.agree = rec.exact && rec.gadget == rec.oracle;
    if (e.info.one_sided)
        rec.counterexample = rec.gadget == "1" && rec.oracle == "0";
    else
        rec.counterexample = rec.exact && rec.gadget != rec.oracle;
    return rec;
}

std::string assignment_text(const Assignment& a, const std::vector<std::string>& order)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& n : order) {
        auto it = a.find(n);
        if (it == a.end())
            continue;
        os << (first ? "" : " ") << n << "=" << it->second;
        first = false;
    }
    for (const auto& [n, v] : a)
        if (std::find(order.begin(), order.end(), n) == order.end()) {
            os << (first ? "" : " ") << n << "=" << v;
            first = false;
        }
    return os.str();
}

std::string range_text(const RangeSpec& r)
{
    return r.name + "=" + emit(r.lo, EmitFormat::Plain) + ".." + emit(r.hi, EmitFormat::Plain);
}

} // namespace

std::vector<GadgetInfo> registered_gadgets()
{
    std::vector<GadgetInfo> out;
    for (const auto& e : registry())
        out.push_back(e.info);
    return out;
}

const GadgetInfo& gadget_info(const std::string& name) { return entry(name).info; }

EquivalenceReport equivalence_harness(const std::string& gadget, std::vector<RangeSpec> ranges,
                                      const HarnessOptions& opts)
{
    const Entry& e = entry(gadget);
    if (ranges.empty())
        for (const auto& r : e.info.default_ranges)
            ranges.push_back(parse_range(r));
    for (const auto& in : e.info.inputs) {
        bool found = std::any_of(ranges.begin(), ranges.end(), [&](const RangeSpec& r) { return r.name == in; });
        if (!found) {
            for (const auto& d : e.info.default_ranges)
                if (d.rfind(in + "=", 0) == 0)
                    ranges.push_back(parse_range(d));
        }
    }
    // order ranges as the gadget lists its inputs so later ends may use earlier names
    std::vector<RangeSpec> ordered;
    for (const auto& in : e.info.inputs)
        for (const auto& r : ranges)
            if (r.name == in)
                ordered.push_back(r);
    if (ordered.size() != ranges.size())
        throw InvalidArgument("range for an input the gadget does not have");

    auto t0 = std::chrono::steady_clock::now();
    std::vector<Assignment> tuples;
    Assignment env;
    enumerate(ordered, 0, env, tuples);

    EquivalenceReport rep;
    rep.gadget = gadget;
    rep.ranges = ordered;
    rep.search_bound = opts.search_bound;
    rep.expect_counterexamples = e.info.expect_counterexamples;
    rep.records.resize(tuples.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i; (i = next++) < tuples.size();) {
            try {
                rep.records[i] = evaluate(e, tuples[i], opts);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = tuples.size();
            }
        }
    };
    unsigned jobs = std::max(1u, opts.jobs);
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);

    for (const auto& r : rep.records) {
        ++rep.tested;
        if (r.agree)
            ++rep.agreements;
        if (!r.exact)
            ++rep.unresolved;
        if (r.flagged)
            ++rep.flagged;
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

bool replay(const std::string& gadget, const TupleRecord& record, const HarnessOptions& opts)
{
    TupleRecord again = evaluate(entry(gadget), record.params, opts);
    return again.gadget == record.gadget && again.oracle == record.oracle &&
           again.counterexample == record.counterexample;
}

std::vector<TupleRecord> EquivalenceReport::counterexamples() const
{
    std::vector<TupleRecord> out;
    for (const auto& r : records)
        if (r.counterexample)
            out.push_back(r);
    return out;
}

bool EquivalenceReport::passed() const
{
    bool any = !counterexamples().empty();
    return expect_counterexamples ? any : !any;
}

std::string EquivalenceReport::to_text() const
{
    const auto& inputs = gadget_info(gadget).inputs;
    std::ostringstream os;
    os << "gadget " << gadget << "\n";
    for (const auto& r : ranges)
        os << "range " << range_text(r) << "\n";
    os << "bound " << search_bound << "\n";
    for (const auto& r : records) {
        os << "tuple " << assignment_text(r.params, inputs) << " gadget=" << r.gadget << " oracle=" << r.oracle
           << " " << (r.counterexample ? "COUNTEREXAMPLE" : r.agree ? "agree" : r.exact ? "miss" : "unresolved")
           << " strategy=" << r.strategy << (r.flagged ? " flagged" : "") << "\n";
    }
    auto cx = counterexamples();
    for (const auto& r : cx)
        os << "counterexample " << assignment_text(r.witness, inputs) << "\n";
    os << "summary tested=" << tested << " agreements=" << agreements << " counterexamples=" << cx.size()
       << " unresolved=" << unresolved << " flagged=" << flagged
       << " expected=" << (expect_counterexamples ? "counterexamples" : "none") << " "
       << (passed() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string EquivalenceReport::to_json() const
{
    using nlohmann::ordered_json;
    const auto& inputs = gadget_info(gadget).inputs;
    auto values = [&](const Assignment& a) {
        ordered_json j = ordered_json::object();
        for (const auto& n : inputs)
            if (a.count(n))
                j[n] = a.at(n).get_str();
        for (const auto& [n, v] : a)
            if (!j.contains(n))
                j[n] = v.get_str();
        return j;
    };
    ordered_json doc;
    doc["gadget"] = gadget;
    doc["ranges"] = ordered_json::array();
    for (const auto& r : ranges)
        doc["ranges"].push_back(range_text(r));
    doc["bound"] = search_bound.get_str();
    doc["expect_counterexamples"] = expect_counterexamples;
    doc["records"] = ordered_json::array();
    for (const auto& r : records) {
        ordered_json j;
        j["params"] = values(r.params);
        j["gadget"] = r.gadget;
        j["oracle"] = r.oracle;
        j["exact"] = r.exact;
        j["agree"] = r.agree;
        j["counterexample"] = r.counterexample;
        j["flagged"] = r.flagged;
        j["strategy"] = r.strategy;
        if (r.counterexample)
            j["witness"] = values(r.witness);
        doc["records"].push_back(j);
    }
    doc["summary"] = {{"tested", tested},
                      {"agreements", agreements},
                      {"counterexamples", counterexamples().size()},
                      {"unresolved", unresolved},
                      {"flagged", flagged},
                      {"passed", passed()}};
    return doc.dump(2) + "\n";
}

} // namespace eppe
