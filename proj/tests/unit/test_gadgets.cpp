#include "eppe/check.hpp"
#include "eppe/errors.hpp"
#include "eppe/gadgets.hpp"
#include "eppe/io.hpp"
#include "eppe/oracles.hpp"

#include <doctest.h>

using namespace eppe;

namespace {

Integer ev(const Term& t, const Assignment& env) { return eval_term(t, env); }

bool all_zero(const GadgetResult& g, const Assignment& env)
{
    for (const auto& e : g.equations())
        if (eval_term(e, env) != 0)
            return false;
    return true;
}

Assignment bind(const GadgetResult& g, std::vector<Integer> values, Assignment env = {})
{
    auto names = g.vars();
    REQUIRE(names.size() == values.size());
    for (std::size_t i = 0; i < names.size(); ++i)
        env[names[i]] = values[i];
    return env;
}

// Fresh variables in the equations are exactly the ledger entries.
void check_ledger_exact(const GadgetResult& g, const std::set<std::string>& params)
{
    std::set<std::string> seen;
    for (const auto& e : g.equations())
        collect_vars(e, seen);
    for (const auto& p : params)
        seen.erase(p);
    auto names = g.vars();
    CHECK(std::set<std::string>(names.begin(), names.end()) == seen);
    for (const auto& p : params)
        CHECK_FALSE(g.ledger.contains(p));
}

const Term y = var("y"), a = var("a"), D = var("D"), b = var("b"), c = var("c"), r = var("r");

} // namespace

TEST_CASE("remainder gadget")
{
    NameSupply ns;
    auto g = g_remainder(ns, y, a, D);
    CHECK(g.ledger.total() == 2);
    check_ledger_exact(g, {"y", "a", "D"});
    CHECK(all_zero(g, bind(g, {1, 2}, {{"y", 1}, {"a", 7}, {"D", 3}})));
    CHECK(all_zero(g, bind(g, {0, 0}, {{"y", 0}, {"a", 0}, {"D", 1}})));
    for (int v = 0; v <= 10; ++v)
        for (int w = 0; w <= 10; ++w)
            CHECK_FALSE(all_zero(g, bind(g, {v, w}, {{"y", 2}, {"a", 7}, {"D", 3}})));
    // D = 0 is unsatisfiable
    CHECK(check_sentence(Formula::exists(g.vars(), g.as_formula()), {{"y", 0}, {"a", 0}, {"D", 0}}, 20)
          == Verdict::Fails);
}

TEST_CASE("remainder gadget shifts a trailing constant in the divisor")
{
    NameSupply ns;
    auto g = g_remainder(ns, var("A"), var("c"), plus_const(var("d"), 1));
    auto v = g.vars();
    CHECK(g.equations()[0] == var("A") + var(v[0]) - var("d"));
}

TEST_CASE("less, divides, congruent")
{
    NameSupply ns;
    auto l = g_less(ns, a, b);
    CHECK(l.ledger.total() == 1);
    CHECK(all_zero(l, bind(l, {2}, {{"a", 2}, {"b", 5}})));
    check_ledger_exact(l, {"a", "b"});

    auto d = g_divides(ns, b, c);
    CHECK(d.ledger.total() == 1);
    CHECK(all_zero(d, bind(d, {4}, {{"b", 3}, {"c", 12}})));
    check_ledger_exact(d, {"b", "c"});

    auto g = g_congruent(ns, var("x"), y, r);
    CHECK(g.ledger.total() == 6);
    CHECK(g.groups.size() == 3);
    check_ledger_exact(g, {"x", "y", "r"});
    // residues 1, 1; slacks 1, 1; quotients 2, 4
    CHECK(all_zero(g, bind(g, {1, 1, 1, 2, 1, 4}, {{"x", 7}, {"y", 13}, {"r", 3}})));
    Formula f = Formula::exists(g.vars(), g.as_formula());
    CHECK(check_sentence(f, {{"x", 7}, {"y", 13}, {"r", 3}}, 10) == Verdict::Holds);
    CHECK(check_sentence(f, {{"x", 7}, {"y", 12}, {"r", 3}}, 10) == Verdict::Fails);
}

TEST_CASE("cantor pairing")
{
    CHECK(cantor_J(0, 0) == 0);
    CHECK(cantor_J(1, 2) == 7);
    std::vector<int> hits(231, 0);
    for (int m = 0; m <= 20; ++m)
        for (int n = 0; m + n <= 20; ++n) {
            Integer j = cantor_J(m, n);
            REQUIRE(j < 231);
            ++hits[j.get_ui()];
            CHECK(ev(cantor_equation(var("z"), m, n), {{"z", j}}) == 0);
        }
    for (int h : hits)
        CHECK(h == 1);
}

TEST_CASE("pell sequences")
{
    CHECK(psi(2, 0) == 0);
    CHECK(psi(2, 2) == 4);
    CHECK(psi(2, 3) == 15);
    CHECK(chi(2, 3) == 26);
    CHECK_THROWS_AS(psi(1, 3), InvalidArgument);
    for (int A = 2; A <= 5; ++A)
        for (unsigned n = 0; n <= 10; ++n) {
            auto [x, yv] = pell(A, n);
            CHECK(x * x - (A * A - 1) * yv * yv == 1);
        }
}

TEST_CASE("psi system gadget")
{
    NameSupply ns;
    auto g = g_psi(ns, var("A"), var("B"), var("C"));
    CHECK(g.ledger.total() == 11);
    check_ledger_exact(g, {"A", "B", "C"});
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j)
            CHECK(pell_chain(2, 2, 4, i, j).D == 49);
    // B > C violates the slack equation for every slack value.
    Term slack = g.equations().back();
    for (int v = 0; v <= 50; ++v)
        CHECK(ev(slack, {{"B", 5}, {"C", 4}, {g.vars().back(), v}}) != 0);
}

TEST_CASE("psi system has no false positives on the desk range")
{
    // Every tuple meeting all conditions has C = psi_A(B).
    const Integer A = 2;
    for (int B = 1; B <= 3; ++B)
        for (int C = 1; C <= 50; ++C)
            for (int i = 0; i <= 8; ++i)
                for (int j = 0; j <= 8; ++j) {
                    PellWitness w = pell_chain(A, B, C, i, j);
                    Integer dfi = w.D * w.F * w.I;
                    bool square = mpz_perfect_square_p(dfi.get_mpz_t()) != 0;
                    Integer hc = w.H - w.C;
                    bool divides = hc >= 0 && hc % w.F == 0;
                    if (square && divides && B <= C)
                        CHECK(C == psi(A, static_cast<unsigned>(B)));
                }
}

TEST_CASE("relation combining expansions")
{
    for (std::size_t q = 1; q <= 3; ++q) {
        Poly p = relation_combine_product(q);
        for (const auto& [mono, coeff] : p.terms())
            for (const auto& [v, e] : mono)
                if (v.rfind("%s", 0) == 0)
                    CHECK(e % 2 == 0);
        CHECK_NOTHROW(relation_combine_reduced(q));
    }
    Term n = var("n");
    Term m1 = relation_combine({{Term(4)}, Term(1), Term(0), Term(1), n, std::nullopt});
    auto p1 = to_poly(m1);
    REQUIRE(p1);
    CHECK(*p1 == *to_poly((n - 19) * (n - 15)));
    CHECK(ev(m1, {{"n", 15}}) == 0);

    Term m2 = relation_combine({{Term(3)}, Term(1), Term(0), Term(1), n, std::nullopt});
    auto p2 = to_poly(m2);
    REQUIRE(p2);
    // W = 1 + 3^2 = 10
    CHECK(*p2 == *to_poly(square(n - 10) - 3));
    for (int k = 0; k <= 1000; ++k)
        CHECK(ev(m2, {{"n", k}}) != 0);
}

TEST_CASE("binomial digit gadget")
{
    NameSupply ns;
    Term n = var("n"), s = var("s");
    auto g = g_binomial_expdioph(ns, y, n, s);
    CHECK(g.ledger.total() == 4);
    check_ledger_exact(g, {"y", "n", "s"});
    // 18^4 = 104976 has base-17 digits 1 4 6 4 1
    Integer big = 104976;
    std::vector<Integer> digits;
    for (Integer t = big; t > 0; t /= 17)
        digits.push_back(t % 17);
    CHECK(digits == std::vector<Integer>{1, 4, 6, 4, 1});
    // determined witness: hi = floor(18^4 / 17^3), lo = 18^4 mod 17^2
    Assignment env{{"y", 6}, {"n", 4}, {"s", 2}};
    auto names = g.vars();
    env[names[0]] = big / 4913;
    env[names[1]] = big % 289;
    env[names[2]] = 289 - big % 289 - 1;
    env[names[3]] = 17 - 6 - 1;
    CHECK(all_zero(g, env));
    CHECK_THROWS_AS(g_binomial_expdioph(ns, y, Term(0), s), InvalidArgument);

    auto gp = g_binomial_expdioph(ns, y, n, s, true);
    CHECK(gp.ledger.total() == 5);
    check_ledger_exact(gp, {"y", "n", "s"});
}

TEST_CASE("binomial eighteen-unknown representation")
{
    NameSupply ns;
    auto g = g_binomial_dioph(ns, y, var("n"), var("s"));
    CHECK(g.ledger.total() == 18);
    check_ledger_exact(g, {"y", "n", "s"});
    CHECK(g.groups.size() == 3);
    // remainder part with n=2, s=1, x=17: w+1 = partial expansion 19, y = 2
    Integer pb = partial_binom(17, 2, 1);
    CHECK(pb == 19);
    Integer q18;
    mpz_fdiv_q(q18.get_mpz_t(), Integer(18 * 18).get_mpz_t(), Integer(17).get_mpz_t());
    CHECK(pb == q18);
    auto names = g.vars();
    Assignment env{{"y", 2}, {names[0], 17}, {names[1], pb - 1}, {names[7], 17 - 2 - 1}, {names[8], 1}};
    for (const auto& e : g.groups[0])
        CHECK(ev(e, env) == 0);
    CHECK(binomial(2, 1) == 2);
    CHECK_THROWS_AS(g_binomial_dioph(ns, y, Term(3), Term(0)), InvalidArgument);
    CHECK_THROWS_AS(g_binomial_dioph(ns, y, Term(3), Term(4)), InvalidArgument);
}

TEST_CASE("divides-binomial gadget")
{
    NameSupply ns;
    Term y1 = var("y1"), z = var("z"), w = var("w");
    auto g = g_div_binomial(ns, y1, z, w);
    CHECK(g.ledger.total() == 4);
    check_ledger_exact(g, {"y1", "z", "w"});
    CHECK(ev(div_binomial_base(y1, z), {{"y1", 3}, {"z", 4}}) == 48);
    Integer p = Integer(5764801) / (48 * 48);
    Integer qr = Integer(5764801) % (48 * 48);
    CHECK(p == 2502);
    CHECK(qr == 193);
    CHECK(p % 48 == 6);
    Assignment env{{"y1", 3}, {"z", 4}, {"w", 2}};
    env = bind(g, {p, qr, 48 * 48 - qr - 1, p / 3}, env);
    CHECK(all_zero(g, env));

    auto lit = g_div_binomial(ns, y1, z, w, true);
    CHECK(ev(div_binomial_base(y1, z, true), {{"y1", 3}, {"z", 4}}) == 64);
    Integer pl = Integer(65 * 65) * (65 * 65) / (64 * 64);
    CHECK(pl == 4358);
    CHECK(pl % 3 != 0);
    CHECK_FALSE(lit.notes.empty());
}

TEST_CASE("bound polynomial majorant")
{
    Term x1 = var("x1"), yy = var("y"), w = var("w"), bb = var("b");
    CHECK(build_B_bound(x1 - yy, {{"y", bb}, {"x1", w}}) == w + bb);
    CHECK(build_B_bound(Term(0), {}) == Term(0));
    CHECK_THROWS_AS(build_B_bound(x1 - var("q"), {{"x1", w}}), InvalidArgument);
    CHECK(build_B_bound(x1 - var("k"), {{"x1", w}}, {"k"}) == w + var("k"));
    CHECK_THROWS_AS(build_B_bound(pow(2, x1), {{"x1", w}}), InvalidArgument);
}

TEST_CASE("strong inequality")
{
    NameSupply ns;
    Term q = var("q");
    CHECK(ev(strong_ineq_bound(Term(1), Term(2), Term(1), 1), {}) == 33);
    auto g = g_strong_ineq(ns, q, Term(1), Term(2), Term(1), 1);
    CHECK(g.ledger.total() == 1);
    CHECK(all_zero(g, bind(g, {0}, {{"q", 34}})));
    auto z = g_strong_ineq(ns, q, Term(3), Term(0), Term(2), 2);
    CHECK(all_zero(z, bind(z, {0}, {{"q", 4}})));
    auto sym = g_strong_ineq(ns, q, plus_const(var("z"), 1), var("B"), var("w"), 24);
    CHECK(emit(sym.equations()[0], EmitFormat::Plain).rfind("z + 2 + (z + 2)^(z + 2)", 0) == 0);
}

TEST_CASE("cost model")
{
    CostModel dioph{5, false};
    CHECK(dioph.save1() == 82);
    CHECK(dioph.save2() == 14);
    CHECK(dioph.conserved() == 68);
    CostModel expo{5, true};
    CHECK(expo.save1() == 22);
    CHECK(expo.save2() == 2);
    CHECK(expo.conserved() == 20);
}
