#include "doctest.h"

#include "eppe/check.hpp"
#include "eppe/io.hpp"
#include "eppe/oracles.hpp"
#include "eppe/pipelines.hpp"

#include <chrono>
#include <set>

using namespace eppe;

namespace {

const Ph2Artifacts& ph2()
{
    static const Ph2Artifacts art = build_ph2();
    return art;
}

const GoodsteinArtifacts& goodstein()
{
    static const GoodsteinArtifacts art = build_goodstein();
    return art;
}

// Drops the outermost existential block, its variables becoming parameters.
Formula open_block(const Formula& f)
{
    REQUIRE(f.kind() == Formula::Kind::Exists);
    return f.body();
}

// Parameters of the tiny instance: Y = {0, 1}, pair (0,1) colored 1.
Assignment tiny_ph2()
{
    return {{"k", 3}, {"M", 1}, {"a", 1}, {"b", 1}, {"r", 2},
            {"c", 4}, {"d", 1}, {"A", 0}, {"X", 1}};
}

std::vector<Integer> partial_sums(const Integer& x, const Integer& base, bool hereditary)
{
    // tau_0 = c_0 next^e_0, tau_{k+1} = tau_k + c_{k+1} next^e_{k+1}, then tau_l repeated
    std::vector<Integer> out;
    Integer next = base + 1, acc = 0;
    unsigned long l = x == 0 ? 0 : highest_power(x, base);
    for (unsigned long k = 0; k <= l; ++k) {
        Integer e = hereditary ? eval_tree(to_hereditary(Integer(k), base), next) : Integer(k);
        Integer p;
        mpz_pow_ui(p.get_mpz_t(), next.get_mpz_t(), e.get_ui());
        acc += digit(x, base, k) * p;
        out.push_back(acc);
    }
    out.push_back(acc);
    return out;
}

Integer bumped(const Integer& x, const Integer& base) { return eval_tree(to_hereditary(x, base), base + 1); }

// Supplies Goedel codes whose variable names contain the given roles.
struct Codes {
    std::map<std::string, std::function<std::vector<Integer>(const Assignment&)>> seqs; // role-b -> seq
    std::map<std::string, std::string> d_of;                                           // role-b -> role-d

    Assignment operator()(const Assignment& env) const
    {
        Assignment out;
        for (const auto& [b, seq] : seqs) {
            auto values = seq(env);
            if (values.empty())
                continue;
            auto [bv, dv] = godel_encode(values);
            out[b] = bv;
            out[d_of.at(b)] = dv;
        }
        return out;
    }
};

Integer big_bound() { return Integer("1000000000000"); }

CheckOptions limited()
{
    CheckOptions o;
    o.node_limit = 1000000;
    o.limits.max_bits = 1 << 14;
    return o;
}

std::string find_role(const VarLedger& ledger, const std::string& role)
{
    for (const auto& e : ledger.entries())
        if (e.name.find("." + role + "@") != std::string::npos)
            return e.name;
    FAIL("no variable with role " << role);
    return {};
}

} // namespace

TEST_CASE("ph2 pipeline counts")
{
    auto t0 = std::chrono::steady_clock::now();
    Ph2Artifacts art = build_ph2();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 5.0);

    CHECK(art.system.conditions.size() == 27);
    CHECK(art.system.m == 24);
    CHECK(art.ledger.total() == 138);
    FormulaStats st = stats(art.final.formula, art.final.params);
    CHECK(st.existential == 138);
    CHECK(st.universal == 0);
    CHECK(st.equations == 1);
    CHECK(art.final.params == std::vector<std::string>{"k", "M", "a", "b", "r"});
    CHECK_NOTHROW(validate(art.final.formula, art.final.params));

    auto names = art.ledger.names();
    CHECK(std::vector<std::string>(names.begin(), names.begin() + 8)
          == std::vector<std::string>{"c", "d", "A", "X", "z", "q", "w", "z0"});
    CHECK(names[31] == "z24");
    CHECK(names[32] == "y1");
    CHECK(names[37] == "f1");
    CHECK(names.back() == "h5");
    std::set<std::string> distinct(names.begin(), names.end());
    CHECK(distinct.size() == 138);
    for (const auto& e : art.ledger.entries())
        CHECK(e.display_name == e.name);
}

TEST_CASE("ph2 stage shapes")
{
    const Ph2Artifacts& art = ph2();
    FormulaStats e4 = stats(art.e4, art.params);
    CHECK(e4.shape == "E4 A2 E20");
    FormulaStats e6 = stats(art.e6, art.params);
    CHECK(e6.shape == "E5 A1 E24");

    std::string p = emit(art.P, EmitFormat::Plain);
    CHECK(p.find("2*z - (2*A + 2*k - 5)^2 - 4*A - 4*k + 11") != std::string::npos);
    CHECK(p.find("z0") != std::string::npos);
    CHECK(p.find("z24") != std::string::npos);
    CHECK(p.find("t") == std::string::npos);

    std::string latex = ph2_latex(art);
    CHECK(latex.find("\\sum_{l=1}^{24}") != std::string::npos);
    CHECK(latex.size() < 6000);
}

TEST_CASE("ph2 e4 at a hand-built assignment")
{
    const Ph2Artifacts& art = ph2();
    Assignment env = tiny_ph2();
    env["x"] = 0;
    env["y"] = 1;
    Formula inner = open_block(open_block(art.e4).body().body());
    auto w = find_witness(Formula::exists(art.e4.body().body().body().vars(), inner), env, 50);
    REQUIRE(w);
    CHECK(w->at("B") == 0);
    CHECK(w->at("C") == 1);
    CHECK(w->at("F") == 1);
    Assignment full = env;
    full.insert(w->begin(), w->end());
    CHECK(eval_term(inner.term(), full) == 0);
}

TEST_CASE("ph2 stages agree at the tiny instance")
{
    const Ph2Artifacts& art = ph2();
    Assignment env = tiny_ph2();
    CHECK(check_sentence(open_block(art.e3), env, 20) == Verdict::Holds);
    CHECK(check_sentence(open_block(art.e4), env, 20) == Verdict::Holds);

    // z codes the pair of bounds: J(A+k-3, A+k-2) = J(0, 1) = 1
    Assignment with_z = env;
    with_z["z"] = cantor_J(0, 1);
    CHECK(check_sentence(open_block(art.e6), with_z, 20) == Verdict::Holds);

    // a coloring with the pair colored 0 while X claims 1
    Assignment wrong = env;
    wrong["a"] = 0;
    CHECK(check_sentence(open_block(art.e3), wrong, 20) == Verdict::Fails);
    CHECK(check_sentence(open_block(art.e4), wrong, 20) == Verdict::Fails);
}

TEST_CASE("ph2 literal forms")
{
    Ph2BuildOptions lit;
    lit.literal = true;
    Ph2Artifacts art = build_ph2(lit);
    CHECK(art.ledger.total() == 138);
    CHECK(art.system.conditions.size() == 27);
    CHECK(emit(art.e4, EmitFormat::Plain).find("(x + v1 + 1 - y)^2") != std::string::npos);
    CHECK(emit(art.final, EmitFormat::Plain).find("(y1 + 1)*2^z1") != std::string::npos);

    // the unguarded x < y summand cannot vanish at x = y = 0
    Assignment env = tiny_ph2();
    CHECK(check_sentence(open_block(art.e4), env, 20) == Verdict::Fails);
    CHECK(check_sentence(open_block(ph2().e4), env, 20) == Verdict::Holds);
}

TEST_CASE("ph2 bound polynomial dominates G")
{
    const Ph2Artifacts& art = ph2();
    const BuqInstance& inst = art.buq;
    std::vector<std::string> vars = inst.params;
    std::uint64_t seed = 7;
    auto next = [&](unsigned mod) {
        seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<long>((seed >> 33) % mod);
    };
    for (int trial = 0; trial < 200; ++trial) {
        Assignment env;
        for (const auto& p : vars)
            env[p] = next(4);
        env["w"] = next(5);
        Integer top = eval_term(inst.b, env) - 1;
        if (top < 0)
            continue;
        env[inst.y] = next(static_cast<unsigned>(top.get_ui() + 1));
        for (const auto& x : inst.xs)
            env[x] = next(static_cast<unsigned>(env["w"].get_ui() + 1));
        Integer g = eval_term(inst.G, env);
        CHECK(abs(g) <= eval_term(art.B, env));
        CHECK(eval_term(art.printed_B, env) > 0);
    }
}

TEST_CASE("g_elem matches positional digits")
{
    const GoodsteinArtifacts& art = goodstein();
    CHECK(art.elem.ledger.total() == 4);
    for (long base : {2, 3, 5})
        for (long n = 0; n <= 200; ++n)
            for (long j = 0; j <= 4; ++j) {
                Integer expected = digit(n, base, j);
                for (long c = 0; c < base + 1; ++c) {
                    Assignment env{{"c", c}, {"n", n}, {"beta", base}, {"j", j}};
                    Verdict v = check_sentence(art.elem.formula, env, 100000);
                    CHECK(v == (c == expected ? Verdict::Holds : Verdict::Fails));
                }
            }
    Assignment env{{"n", 23}, {"beta", 3}, {"j", 1}, {"c", 1}};
    CHECK(check_sentence(art.elem.formula, env, 1000) == Verdict::Holds);
    env = {{"n", 23}, {"beta", 3}, {"j", 0}, {"c", 2}};
    CHECK(check_sentence(art.elem.formula, env, 1000) == Verdict::Holds);
}

TEST_CASE("g_HP matches the highest power")
{
    const GoodsteinArtifacts& art = goodstein();
    for (long l = 0; l <= 10; ++l) {
        Assignment env{{"n", 100}, {"beta", 2}, {"l", l}};
        CHECK(check_sentence(art.hp.formula, env, 100000000) == (l == 6 ? Verdict::Holds : Verdict::Fails));
    }
    for (long base : {2, 3, 5})
        for (long n = 0; n <= 200; ++n) {
            long expected = n == 0 ? 0 : static_cast<long>(highest_power(n, base));
            for (long l = 0; l <= 8; ++l) {
                Assignment env{{"n", n}, {"beta", base}, {"l", l}};
                CHECK(check_sentence(art.hp.formula, env, 100000000)
                      == (l == expected ? Verdict::Holds : Verdict::Fails));
            }
        }
}

TEST_CASE("g_disjunction")
{
    Term one(1), two(2), zero(0);
    CHECK(eval_term(g_disjunction({one}, {two}), {}) == 4);
    CHECK(eval_term(g_disjunction({zero}, {two}), {}) == 0);
    CHECK(eval_term(g_disjunction({one, one}, {zero, zero}), {}) == 0);

    // at n = 0 only the second group vanishes, and only with l = 0
    NameSupply ns;
    GadgetResult hp = g_HP(ns, Term::var("l"), Term(0), Term(2));
    Formula f = Formula::exists(hp.vars(), hp.as_formula());
    CHECK(check_sentence(f, {{"l", 0}}, 100) == Verdict::Holds);
    CHECK(check_sentence(f, {{"l", 1}}, 100) == Verdict::Fails);
}

TEST_CASE("g_RB and g_level accept coded witnesses")
{
    NameSupply ns;
    PrefixedGadget rb = g_RB(ns, Term::var("out"), Term::var("n"), Term::var("beta"));
    CHECK_NOTHROW(validate(rb.formula, {"out", "n", "beta"}));

    Codes codes;
    std::string b = find_role(rb.ledger, "code-b");
    codes.d_of[b] = find_role(rb.ledger, "code-d");
    codes.seqs[b] = [](const Assignment&) { return std::vector<Integer>{2, 6, 38, 38}; };
    Assignment env{{"out", 38}, {"n", 23}, {"beta", 3}};
    CHECK(check_guided(rb.staged, env, codes, big_bound(), limited()) == Verdict::Holds);
    env["out"] = 37;
    CHECK(check_guided(rb.staged, env, codes, big_bound(), limited()) != Verdict::Holds);

    PrefixedGadget lv = g_level(ns, Term::var("L"), Term::var("n"), Term::var("beta"));
    CHECK_NOTHROW(validate(lv.formula, {"L", "n", "beta"}));
    Codes lc;
    std::string lb = find_role(lv.ledger, "code-b");
    lc.d_of[lb] = find_role(lv.ledger, "code-d");
    lc.seqs[lb] = [](const Assignment&) { return std::vector<Integer>{16, 4, 2, 1, 0}; };
    CHECK(check_guided(lv.staged, {{"L", 3}, {"n", 16}, {"beta", 2}}, lc, big_bound(), limited()) == Verdict::Holds);
    CHECK(check_guided(lv.staged, {{"L", 2}, {"n", 16}, {"beta", 2}}, lc, big_bound(), limited()) != Verdict::Holds);
}

TEST_CASE("g_bump accepts the tabulated hereditary bump")
{
    NameSupply ns;
    PrefixedGadget bump = g_bump(ns, Term::var("out"), Term::var("n"), Term::var("beta"));
    CHECK_NOTHROW(validate(bump.formula, {"out", "n", "beta"}));
    std::string x = find_role(bump.ledger, "x");
    Codes codes;
    std::string tb = find_role(bump.ledger, "table-b"), rb = find_role(bump.ledger, "row-b");
    codes.d_of[tb] = find_role(bump.ledger, "table-d");
    codes.d_of[rb] = find_role(bump.ledger, "row-d");
    codes.seqs[tb] = [](const Assignment& env) {
        std::vector<Integer> t;
        for (Integer v = 0; v <= env.at("n"); ++v)
            t.push_back(bumped(v, env.at("beta")));
        return t;
    };
    codes.seqs[rb] = [x](const Assignment& env) {
        auto it = env.find(x);
        return it == env.end() ? std::vector<Integer>{} : partial_sums(it->second, env.at("beta"), true);
    };
    for (long n : {1, 2, 3, 4, 5}) {
        Integer out = bumped(n, 2);
        CHECK(check_guided(bump.staged, {{"out", out}, {"n", n}, {"beta", 2}}, codes, big_bound(), limited())
              == Verdict::Holds);
        CHECK(check_guided(bump.staged, {{"out", out + 1}, {"n", n}, {"beta", 2}}, codes, big_bound(), limited())
              != Verdict::Holds);
    }
    CHECK(bumped(4, 2) == 27);
}

TEST_CASE("goodstein rebuild")
{
    auto t0 = std::chrono::steady_clock::now();
    GoodsteinArtifacts art = build_goodstein();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 5.0);

    CHECK(art.final.params == std::vector<std::string>{"m", "a"});
    CHECK_NOTHROW(validate(art.final.formula, art.final.params));
    for (const auto& v : free_vars(art.final.formula))
        CHECK((v == "m" || v == "a"));
    FormulaStats st = stats(art.final.formula, art.final.params);
    CHECK(st.existential + st.universal == art.ledger.total());
    CHECK(st.shape == art.shape);
    CHECK(art.shape == "E3 A1 E14 A1 E21 A1 E13");
    CHECK(art.ledger.total() == 54);
    CHECK(free_vars(art.staged) == free_vars(art.final.formula));

    CHECK(art.erratum.display_total == 181);
    CHECK(art.erratum.our_total == 54);
    std::string report = erratum_report(art);
    CHECK(report.find("display total: 181") != std::string::npos);
    CHECK(report.find("difference: -127") != std::string::npos);
    CHECK(report.find("b2 b3 b4 d2 d3 d4") != std::string::npos);
    CHECK(art.ledger.at("m_i").display_name == "v1");
}

TEST_CASE("goodstein formula accepts the coded run for m = 2, a = 2")
{
    const GoodsteinArtifacts& art = goodstein();
    GoodsteinRun run = goodstein_seq(2, 2, 10);
    REQUIRE(run.terminated);
    const std::vector<Integer> ms = run.values; // 2 2 1 0
    Codes codes;
    codes.d_of = {{"b1", "d1"}, {"b2", "d2"}, {"b3", "d3"}};
    codes.seqs["b1"] = [ms](const Assignment&) { return ms; };
    codes.seqs["b2"] = [ms](const Assignment& env) {
        std::vector<Integer> t;
        auto it = env.find("i");
        if (it == env.end())
            return t;
        Integer base = it->second + env.at("a");
        for (Integer v = 0; v <= ms[it->second.get_ui()]; ++v)
            t.push_back(bumped(v, base));
        return t;
    };
    codes.seqs["b3"] = [](const Assignment& env) {
        auto it = env.find("x");
        if (it == env.end())
            return std::vector<Integer>{};
        return partial_sums(it->second, env.at("i") + env.at("a"), true);
    };
    auto supply = [&](const Assignment& env) {
        Assignment out = codes(env);
        out["r"] = static_cast<long>(ms.size()) - 2;
        return out;
    };
    CHECK(check_guided(art.staged, {{"m", 2}, {"a", 2}}, supply, big_bound(), limited()) == Verdict::Holds);
    // the same codes do not certify a different start
    CHECK(check_guided(art.staged, {{"m", 3}, {"a", 2}}, supply, big_bound(), limited()) != Verdict::Holds);
}
