#include "eppe/errors.hpp"
#include "eppe/oracles.hpp"

#include <doctest.h>

using namespace eppe;

TEST_CASE("binomial oracle")
{
    CHECK(binomial(7, 0) == 1);
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(3, 5) == 0);
    for (unsigned n = 1; n <= 30; ++n)
        for (unsigned s = 0; s <= n; ++s) {
            CHECK(binomial(n, s) == binomial(n, n - s));
            if (s >= 1)
                CHECK(binomial(n, s) == binomial(n - 1, s - 1) + binomial(n - 1, s));
        }
}

TEST_CASE("partial binomial expansion")
{
    CHECK(partial_binom(17, 2, 1) == 19);
    for (unsigned n = 0; n <= 6; ++n)
        CHECK(partial_binom(9, n, n) == 1);
    for (unsigned n = 1; n <= 8; ++n)
        for (unsigned s = 0; s <= n; ++s) {
            Integer ns;
            mpz_ui_pow_ui(ns.get_mpz_t(), n, s);
            for (int d = 1; d <= 5; ++d) {
                Integer x = ns + d;
                Integer num, den, q;
                Integer x1 = x + 1;
                mpz_pow_ui(num.get_mpz_t(), x1.get_mpz_t(), n);
                mpz_pow_ui(den.get_mpz_t(), x.get_mpz_t(), s);
                mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                CHECK(partial_binom(x, n, s) == q);
            }
        }
}

namespace {

// Independent check that a coloring has no homogeneous Y with |Y| >= min(Y)+k-1.
bool coloring_is_bad(const std::vector<std::vector<unsigned>>& col, unsigned k)
{
    const unsigned n = static_cast<unsigned>(col.size());
    for (std::uint32_t set = 1; set < (std::uint32_t{1} << n); ++set) {
        unsigned size = static_cast<unsigned>(__builtin_popcount(set));
        unsigned least = static_cast<unsigned>(__builtin_ctz(set));
        if (size + 1 < least + k)
            continue;
        int seen = -1;
        bool homogeneous = true;
        for (unsigned a = 0; a < n; ++a)
            for (unsigned b = a + 1; b < n; ++b)
                if ((set >> a & 1u) && (set >> b & 1u)) {
                    int c = static_cast<int>(col[a][b]);
                    if (seen != -1 && c != seen)
                        homogeneous = false;
                    seen = c;
                }
        if (homogeneous)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("ph2 oracle examples")
{
    CHECK(ph2_check(3, 2, 1));
    CHECK_FALSE(ph2_check(4, 2, 1));
    CHECK(ph2_check_clique(3, 2, 1));
    CHECK_FALSE(ph2_check_clique(4, 2, 1));
    Ph2Options tiny;
    tiny.max_colorings = 100;
    CHECK_THROWS_AS(ph2_check(4, 2, 5, tiny), BudgetExceeded);
}

TEST_CASE("ph2 oracles agree and are monotone in M")
{
    for (unsigned r = 1; r <= 3; ++r)
        for (unsigned k = 1; k <= 4; ++k) {
            bool prev = false;
            unsigned maxM = r == 3 ? 3 : 4;
            for (unsigned M = 0; M <= maxM; ++M) {
                bool a = ph2_check(k, r, M);
                CHECK(a == ph2_check_clique(k, r, M));
                CHECK(a == !ph2_bad_coloring(k, r, M).has_value());
                if (prev)
                    CHECK(a);
                prev = a;
            }
        }
}

TEST_CASE("least M for k=4, r=2")
{
    CHECK(ph2_min_M(4, 2, 12) == 10);
    auto bad = ph2_bad_coloring(4, 2, 9);
    REQUIRE(bad.has_value());
    CHECK(coloring_is_bad(*bad, 4));
    CHECK(ph2_min_M(3, 2, 5) == 1);
}

TEST_CASE("hereditary notation")
{
    HereditaryTree four = to_hereditary(4, 2);
    REQUIRE(four.terms.size() == 1);
    CHECK(four.terms[0].first == 1);
    CHECK(eval_tree(four.terms[0].second, 2) == 2);
    CHECK(to_string(four, 2) == "2^(2^(1))");
    CHECK(to_hereditary(0, 3).empty());
    CHECK_THROWS_AS(to_hereditary(5, 1), InvalidArgument);
    for (int base = 2; base <= 5; ++base)
        for (int n = 0; n <= 5000; ++n) {
            HereditaryTree t = to_hereditary(n, base);
            REQUIRE(eval_tree(t, base) == n);
            for (const auto& [c, e] : t.terms)
                REQUIRE((c >= 1 && c < base));
        }
}

TEST_CASE("goodstein steps and sequences")
{
    CHECK(goodstein_step(3, 2) == 3);
    CHECK(goodstein_step(4, 2) == 26);
    CHECK(goodstein_step(1, 4) == 0);
    CHECK_THROWS_AS(goodstein_step(0, 2), InvalidArgument);
    for (int base = 2; base <= 5; ++base)
        for (int m = 1; m <= 300; ++m)
            REQUIRE(goodstein_step(m, base) == goodstein_step_direct(m, base));

    auto two = goodstein_seq(2, 2, 100);
    CHECK(two.terminated);
    CHECK(two.steps() == 3);
    CHECK(two.values == std::vector<Integer>{2, 2, 1, 0});
    auto three = goodstein_seq(3, 2, 100);
    CHECK(three.terminated);
    CHECK(three.steps() == 5);
    CHECK(three.values == std::vector<Integer>{3, 3, 3, 2, 1, 0});
    auto four = goodstein_seq(4, 2, 10000);
    CHECK_FALSE(four.terminated);
    CHECK(four.values.size() == 10001);
    CHECK(four.values.back() > four.values.front());
}

TEST_CASE("digits and highest powers")
{
    CHECK(digit(23, 3, 0) == 2);
    CHECK(digit(23, 3, 1) == 1);
    CHECK(digit(23, 3, 2) == 2);
    CHECK(digit(0, 7, 3) == 0);
    CHECK(highest_power(100, 2) == 6);
    CHECK(highest_power(1, 10) == 0);
}
