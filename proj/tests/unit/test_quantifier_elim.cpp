#include "doctest.h"

#include "eppe/check.hpp"
#include "eppe/errors.hpp"
#include "eppe/io.hpp"
#include "eppe/quantifier_elim.hpp"

using namespace eppe;

namespace {

Term v(const char* n) { return Term::var(n); }

BuqInstance toy(const Term& b, const Term& G)
{
    BuqInstance inst;
    inst.y = "y";
    inst.b = b;
    inst.xs = {"x"};
    inst.G = G;
    return inst;
}

std::vector<std::vector<Integer>> rows(std::initializer_list<long> xs)
{
    std::vector<std::vector<Integer>> out;
    for (long x : xs)
        out.push_back({Integer(x)});
    return out;
}

} // namespace

TEST_CASE("buq round trip through formulas")
{
    Formula f = parse_formula("(forall (y < 3) (exists (x) (= (- x (^ y 2)) 0)))");
    BuqInstance inst = buq_from_formula(f, {});
    CHECK(inst.y == "y");
    CHECK(inst.xs == std::vector<std::string>{"x"});
    CHECK(to_formula(inst) == f);

    Formula le = parse_formula("(forall (y <= 2) (exists (x) (= (- x y) 0)))");
    CHECK(emit(buq_from_formula(le, {}).b, EmitFormat::Plain) == "3");

    CHECK_THROWS_AS(buq_from_formula(parse_formula("(exists (x) (= x 0))"), {}), ShapeMismatch);
    CHECK_THROWS_AS(buq_from_formula(parse_formula("(forall (y < 3) (exists (x) (= (- x a) 0)))"), {}),
                    ShapeMismatch);

    Document d = parse_document("(params a)\n(exists (c) (forall (y < a) (exists (x) (= (- x (+ c y)) 0))))");
    BuqSplit s = split_buq(d);
    CHECK(s.carried == std::vector<std::string>{"c"});
    CHECK(s.inst.params == std::vector<std::string>{"a", "c"});
}

TEST_CASE("eliminate_buq emits m+3 conditions")
{
    EquationSystem s1 = eliminate_buq(toy(Term(2), v("x") - v("y")));
    REQUIRE(s1.conditions.size() == 4);
    CHECK(s1.conditions[0].kind == ConditionKind::CongruenceModBinomial);
    CHECK(s1.conditions[1].kind == ConditionKind::Identity);
    CHECK(s1.conditions[2].kind == ConditionKind::StrongInequality);
    CHECK(s1.conditions[3].kind == ConditionKind::DividesBinomial);
    CHECK(s1.ledger.names() == std::vector<std::string>{"q", "w", "z0", "z1"});
    CHECK(emit(s1.poly, EmitFormat::Plain) == "z1 - z0");
    CHECK(describe(s1, s1.conditions[3]) == "C(q, 2) | C(z1, w)");

    BuqInstance three = toy(Term(2), v("x1") + v("x2") + v("x3") - v("y"));
    three.xs = {"x1", "x2", "x3"};
    CHECK(eliminate_buq(three).conditions.size() == 6);
}

TEST_CASE("DPR witnesses satisfy every condition")
{
    struct Case {
        BuqInstance inst;
        std::vector<std::vector<Integer>> witnesses;
    };
    std::vector<Case> cases{
        {toy(Term(2), v("x") - v("y")), rows({0, 1})},
        {toy(Term(1), v("x") - 5), rows({5})},
        {toy(Term(3), v("x") - square(v("y"))), rows({0, 1, 4})},
    };
    for (const auto& c : cases) {
        CHECK(check_sentence(to_formula(c.inst), {}, 10) == Verdict::Holds);
        EquationSystem sys = eliminate_buq(c.inst);
        Assignment a = construct_dpr_witness(c.inst, sys, c.witnesses);
        CHECK(a.size() == 4);
        for (const auto& cond : sys.conditions)
            CHECK_MESSAGE(condition_holds(sys, cond, a), describe(sys, cond));
        // q is the first admissible multiple: one step down breaks the inequality or the shape
        CHECK(a.at("z0") == a.at("q"));
        CHECK(a.at("w") > c.witnesses.size() - 1);
    }
}

TEST_CASE("DPR witness errors")
{
    BuqInstance inst = toy(Term(2), v("x") - v("y"));
    CHECK_THROWS_AS(construct_dpr_witness(inst, rows({0})), InvalidArgument);
    CHECK_THROWS_AS(construct_dpr_witness(inst, {{0, 1}, {1, 1}}), InvalidArgument);
    EvalLimits tight;
    tight.max_bits = 8;
    CHECK_THROWS_AS(construct_dpr_witness(inst, rows({0, 1}), {}, tight), BudgetExceeded);
}

TEST_CASE("a wrong assignment breaks some condition")
{
    BuqInstance inst = toy(Term(2), v("x") - v("y"));
    EquationSystem sys = eliminate_buq(inst);
    Assignment a = construct_dpr_witness(inst, sys, rows({0, 1}));
    Assignment bad = a;
    bad["z1"] = a.at("z1") + 1;
    CHECK_FALSE(system_holds(sys, bad));
    bad = a;
    bad["z0"] = a.at("q") - 1;
    CHECK_FALSE(system_holds(sys, bad));
}

TEST_CASE("flatten ledger arithmetic")
{
    for (unsigned m : {1u, 2u, 3u}) {
        BuqInstance inst = toy(Term(2), v("x1") - v("y"));
        inst.xs.clear();
        for (unsigned l = 1; l <= m; ++l)
            inst.xs.push_back("x" + std::to_string(l));
        EquationSystem sys = eliminate_buq(inst);
        NameSupply ns;
        FlattenResult fr = flatten(sys, ns, {{"c"}, {}});
        CHECK(fr.ledger.total() == 5 * m + 13 + 1);
        CHECK(fr.ledger.names().front() == "c");
        CHECK(fr.divides_groups.size() == m);
        CHECK(fr.fixed_groups.size() == 4);
        CHECK(fr.h_block.size() == 5);
        CHECK(fr.j_block.size() == 3);
        CHECK(is_equational(fr.document.formula));
        auto fv = free_vars(fr.equation);
        for (const auto& name : fv)
            CHECK(fr.ledger.contains(name));
    }
}

TEST_CASE("flattened toy with a failing instance has no small solution")
{
    // forall y < 2 exists x [x + 1 - y... ] fails at y = 0 for x + 1 = y
    Formula f = parse_formula("(forall (y < 2) (exists (x) (= (- (+ x 1) y) 0)))");
    CHECK(check_sentence(f, {}, 10) == Verdict::Fails);
    EquationSystem sys = eliminate_buq(buq_from_formula(f, {}));
    NameSupply ns;
    FlattenResult fr = flatten(sys, ns);
    CheckOptions opts;
    opts.node_limit = 200000;
    CHECK_FALSE(find_witness(fr.document.formula, {}, 3, opts).has_value());
}

TEST_CASE("collapse reproduces the pairing head")
{
    Formula f = Formula::forall(
        "x", v("A") + v("k") - 3, false,
        Formula::forall("y", v("A") + v("k") - 2, false,
                        Formula::exists({"c"}, Formula::equation(v("c") - v("x") - v("y")))));
    Formula g = collapse_pair_quantifiers(f);
    REQUIRE(g.kind() == Formula::Kind::Exists);
    CHECK(g.vars() == std::vector<std::string>{"z"});
    const Formula& all = g.body();
    REQUIRE(all.kind() == Formula::Kind::ForallBounded);
    CHECK(all.bound_var() == "t");
    const Formula& inner = all.body();
    CHECK(inner.vars() == std::vector<std::string>{"x", "y", "c", "v_x", "v_y"});
    std::string text = emit(inner.body().term(), EmitFormat::Plain);
    CHECK(text.find("(2*z - (2*A + 2*k - 5)^2 - 4*A - 4*k + 11)^2") != std::string::npos);
    CHECK(text.find("(A + k - 2 + v_x - x)*(A + k - 1 + v_y - y)") != std::string::npos);

    Formula bad = Formula::forall(
        "x", Term(2), false, Formula::forall("y", v("x"), false, Formula::equation(v("x") - v("y"))));
    CHECK_THROWS_AS(collapse_pair_quantifiers(bad), ShapeMismatch);
}

TEST_CASE("collapse preserves verdicts on toy sentences")
{
    const char* sentences[] = {
        "(forall (x <= 1) (forall (y <= 1) (exists (c) (= (- c (+ x y)) 0))))",
        "(forall (x <= 1) (forall (y <= 1) (exists (c) (= (- x (+ y c)) 0))))",
        "(forall (x <= 0) (forall (y <= 0) (= x 0)))",
        "(forall (x < 2) (forall (y < 3) (exists (c) (= (- (* c 1) (* x y)) 0))))",
        "(forall (x <= 2) (forall (y <= 1) (exists (c) (= (- (+ c 1) y) 0))))",
    };
    CheckOptions opts;
    opts.node_limit = 2000000;
    int compared = 0;
    for (const char* s : sentences) {
        Formula f = parse_formula(s);
        Verdict a = check_sentence(f, {}, 40, opts);
        Verdict b = check_sentence(collapse_pair_quantifiers(f), {}, 40, opts);
        INFO(s);
        REQUIRE(a != Verdict::Unknown);
        if (b != Verdict::Unknown) {
            CHECK(a == b);
            ++compared;
        }
    }
    // an outer existential over an unbounded z can only be refuted up to the bound
    CHECK(compared >= 3);
}
