#include "eppe/check.hpp"
#include "eppe/errors.hpp"
#include "eppe/io.hpp"
#include "eppe/poly.hpp"

#include <doctest.h>

#include <random>

using namespace eppe;

namespace {

Term x = var("x");
Term y = var("y");

} // namespace

TEST_CASE("eval_term basics")
{
    CHECK(eval_term(Term(0), {}) == 0);
    CHECK(eval_term(pow(2, var("q")), {{"q", 10}}) == 1024);
    CHECK_THROWS_AS(eval_term(x, {}), UnboundVariable);
    CHECK_THROWS_AS(eval_term(pow(2, x - 3), {{"x", 1}}), NegativeExponent);
    CHECK_THROWS_AS(eval_term(pow(3, x), {{"x", Integer(1) << 40}}), BudgetExceeded);
    CHECK(eval_term(x - 3, {{"x", 1}}) == -2);
}

TEST_CASE("e6 head term vanishes at A=1 k=2 z=1")
{
    Term A = var("A"), k = var("k"), z = var("z");
    Term head = 2 * z - square(2 * A + 2 * k - 5) - 4 * A - 4 * k + 11;
    CHECK(eval_term(head, {{"A", 1}, {"k", 2}, {"z", 1}}) == 0);
}

TEST_CASE("sum_of_squares")
{
    std::vector<Term> one{x};
    CHECK(sum_of_squares(one) == square(x));
    std::vector<Term> two{x, y - 1};
    auto s = sum_of_squares(two);
    CHECK(eval_term(s, {{"x", 0}, {"y", 1}}) == 0);
    CHECK(eval_term(s, {{"x", 1}, {"y", 1}}) == 1);
    CHECK_THROWS(sum_of_squares(std::span<const Term>{}));
}

TEST_CASE("sum_of_squares zero-equivalence on random term lists")
{
    std::mt19937 rng(7);
    std::vector<Term> atoms{x, y, var("z"), Term(1), Term(2)};
    auto pick = [&] { return atoms[rng() % atoms.size()]; };
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Term> ts;
        int n = 1 + int(rng() % 3);
        for (int i = 0; i < n; ++i) {
            switch (rng() % 3) {
            case 0:
                ts.push_back(pick() - pick());
                break;
            case 1:
                ts.push_back(pick() * pick() - pick());
                break;
            default:
                ts.push_back(pick() + pick() - pick() * pick());
            }
        }
        Term s = sum_of_squares(ts);
        for (int a = 0; a <= 5; ++a)
            for (int b = 0; b <= 5; ++b)
                for (int c = 0; c <= 5; ++c) {
                    Assignment env{{"x", a}, {"y", b}, {"z", c}};
                    bool all_zero = true;
                    for (const auto& t : ts)
                        all_zero = all_zero && eval_term(t, env) == 0;
                    REQUIRE((eval_term(s, env) == 0) == all_zero);
                }
    }
}

TEST_CASE("poly expansion and rendering")
{
    auto p = to_poly(square(x - y));
    REQUIRE(p);
    CHECK(p->total_degree() == 2);
    CHECK(p->eval({{"x", 5}, {"y", 2}}) == 9);
    Term back = p->to_term();
    CHECK(eval_term(back, {{"x", 5}, {"y", 2}}) == 9);
    CHECK_FALSE(to_poly(pow(2, x)).has_value());
    auto q = to_poly(pow(2, x), {{"x", 3}});
    REQUIRE(q);
    CHECK(q->constant_term() == 8);
    auto u = to_poly(square(x) - 4, {});
    REQUIRE(u);
    auto c = u->univariate("x");
    REQUIRE(c);
    CHECK((*c)[0] == -4);
    CHECK((*c)[2] == 1);
}

TEST_CASE("parse grammar instance")
{
    Formula f = parse_formula("(= (- x 3) 0)");
    CHECK(f == Formula::equation(Term::difference(Term::var("x"), Term(3))));
    CHECK_THROWS_AS(parse_formula("(= (- x 3) 1)"), ParseError);
    CHECK_THROWS_AS(parse_formula("(= (% x 3) 0)"), ParseError);
    CHECK_THROWS_AS(parse_formula("(= and 0)"), ParseError);
    try {
        parse_formula("(and\n  (= x 0)\n  (= # 0))");
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 6);
    }
}

TEST_CASE("document header declares parameters")
{
    Document d = parse_document("(params a)\n(exists (x) (= (- x a) 0))");
    CHECK(d.params == std::vector<std::string>{"a"});
    CHECK_THROWS_AS(parse_document("(params a)\n(exists (x) (= (- x b) 0))"), ParseError);
    Document round = parse_document(emit(d, EmitFormat::Sexpr));
    CHECK(round.params == d.params);
    CHECK(round.formula == d.formula);
}

TEST_CASE("emission formats")
{
    Term p = pow(2, var("q"));
    CHECK(emit(p, EmitFormat::Latex) == "2^{q}");
    CHECK(emit(p, EmitFormat::Sexpr) == "(^ 2 q)");
    CHECK(emit(p, EmitFormat::Plain) == "2^q");
    CHECK(emit(2 * x - square(x + y), EmitFormat::Plain) == "2*x - (x + y)^2");
    CHECK(emit(2 * x, EmitFormat::Latex) == "2 x");
    CHECK(emit(x * 2, EmitFormat::Latex) == "x \\cdot 2");
    CHECK(emit(var("v18"), EmitFormat::Latex) == "v_{18}");
    CHECK(emit(var("rem.v@3"), EmitFormat::Latex, {{"rem.v@3", "v_3"}}) == "v_{3}");
}

TEST_CASE("check_sentence examples")
{
    CHECK(check_sentence(parse_formula("(exists (x) (= (- x 3) 0))"), {}, 5) == Verdict::Holds);
    CHECK(check_sentence(parse_formula("(forall (y < 3) (= y 0))"), {}, 5) == Verdict::Fails);
    CHECK(check_sentence(parse_formula("(exists (x) (= (+ x 1) 0))"), {}, 100) == Verdict::Fails);
    CHECK(check_sentence(parse_formula("(exists (x) (= (- x 200) 0))"), {}, 100) == Verdict::Unknown);
    CHECK(check_sentence(parse_formula("(exists (x y) (= (- (* x y) 7) 0))"), {}, 5) == Verdict::Unknown);
    CHECK(check_sentence(parse_formula("(forall (y < 3) (exists (x) (= (- x (* y y)) 0)))"), {}, 4)
          == Verdict::Holds);
    CHECK(check_sentence(parse_formula("(forall (y < 3) (exists (x) (= (- x (* y y)) 0)))"), {}, 3)
          == Verdict::Unknown);
    CHECK(check_sentence(parse_formula("(exists (x y) (= (* (- x 2) (- y 3)) 0))"), {}, 3)
          == Verdict::Holds);
    CHECK(check_sentence(parse_formula("(exists (x) (= (- (* x x) 49) 0))"), {}, 100) == Verdict::Holds);
}

TEST_CASE("check_sentence is monotone in the search bound")
{
    const char* corpus[] = {
        "(forall (y < 4) (exists (x) (= (- x (* y y)) 0)))",
        "(forall (y <= 2) (exists (x v) (= (+ (^ (- (+ x v 1) 5) 2) (^ (- x y) 2)) 0)))",
        "(exists (a b) (= (- (* a b) 12) 0))",
        "(forall (y < 3) (= (* y (- y 1)) 0))",
    };
    for (const char* src : corpus) {
        Formula f = parse_formula(src);
        Verdict prev = Verdict::Unknown;
        for (int b = 0; b <= 20; ++b) {
            Verdict v = check_sentence(f, {}, b);
            if (prev != Verdict::Unknown)
                CHECK(v == prev);
            prev = v;
        }
    }
}

TEST_CASE("stats counts blocks")
{
    Formula f = parse_formula("(exists (c d) (forall (x <= c) (forall (y <= d) (exists (u v w) "
                              "(= (+ u v w x y) 0)))))");
    FormulaStats s = stats(f);
    CHECK(s.existential == 5);
    CHECK(s.universal == 2);
    CHECK(s.shape == "E2 A2 E3");
    CHECK(s.params.empty());
}
