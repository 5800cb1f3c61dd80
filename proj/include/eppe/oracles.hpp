#pragma once

#include "eppe/term.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eppe {

// Pascal-triangle binomial coefficient; 0 when s > n.
Integer binomial(unsigned n, unsigned s);
std::vector<Integer> pascal_row(unsigned n);

// sum_{i=0}^{n-s} C(n, s+i) x^i
Integer partial_binom(const Integer& x, unsigned n, unsigned s);

// --- PH^2 ---------------------------------------------------------------

struct Ph2Options {
    // Upper limit on the number of colorings examined.
    std::uint64_t max_colorings = std::uint64_t{1} << 26;
    // Node limit of the backtracking coloring search.
    std::uint64_t max_search_nodes = std::uint64_t{1} << 32;
};

// Every r-coloring of the 2-subsets of {0..M} has a homogeneous Y with
// |Y| >= min(Y) + k - 1. Sets with fewer than two pairs are homogeneous.
bool ph2_check(unsigned k, unsigned r, unsigned M, const Ph2Options& opts = {});
// Second implementation: per coloring, largest monochromatic clique per
// (color, least element).
bool ph2_check_clique(unsigned k, unsigned r, unsigned M, const Ph2Options& opts = {});
// A coloring of the pairs of {0..M} (as a symmetric matrix) without a large
// homogeneous set, found by complete backtracking; nullopt if none exists.
std::optional<std::vector<std::vector<unsigned>>> ph2_bad_coloring(unsigned k, unsigned r, unsigned M,
                                                                   const Ph2Options& opts = {});
// Some Y with |Y| >= min(Y) + k - 1 is monochromatic under this coloring.
bool ph2_homogeneous(const std::vector<std::vector<unsigned>>& coloring, unsigned k);
// Least M <= max_M for which no bad coloring exists; -1 if none.
long ph2_min_M(unsigned k, unsigned r, unsigned max_M, const Ph2Options& opts = {});

// --- hereditary notation and Goodstein ------------------------------------

struct HereditaryTree {
    // (coefficient, exponent), exponents strictly decreasing.
    std::vector<std::pair<Integer, HereditaryTree>> terms;

    bool empty() const { return terms.empty(); }
    friend bool operator==(const HereditaryTree& a, const HereditaryTree& b) { return a.terms == b.terms; }
};

HereditaryTree to_hereditary(const Integer& n, const Integer& base);
Integer eval_tree(const HereditaryTree& t, const Integer& base, const EvalLimits& limits = {});
std::string to_string(const HereditaryTree& t, const Integer& base);

// Rewrite m in hereditary base, replace base by base+1, subtract 1.
Integer goodstein_step(const Integer& m, const Integer& base, const EvalLimits& limits = {});
// Same function computed by direct recursion without building a tree.
Integer goodstein_step_direct(const Integer& m, const Integer& base, const EvalLimits& limits = {});

struct GoodsteinRun {
    std::vector<Integer> values;
    bool terminated = false;
    std::size_t steps() const { return values.empty() ? 0 : values.size() - 1; }
};

// m_0 = m, m_{i+1} = G_{a+i}(m_i), stopping at 0 or after `cap` steps.
GoodsteinRun goodstein_seq(const Integer& m, const Integer& a, std::size_t cap,
                           const EvalLimits& limits = {});

// Digit j of n in the given base.
Integer digit(const Integer& n, const Integer& base, unsigned long j);
// Largest l with base^l <= n, for n >= 1.
unsigned long highest_power(const Integer& n, const Integer& base);

// --- sequence coding -------------------------------------------------------

// rem(b, 1 + (k+1) d)
Integer godel_element(const Integer& b, const Integer& d, unsigned long k);
// (b, d) with godel_element(b, d, k) = seq[k], using the least workable d.
std::pair<Integer, Integer> godel_encode(const std::vector<Integer>& seq);
// (a, b) with rem(a, b (x + y^2) + 1) = coloring[x][y] for every pair x < y.
std::pair<Integer, Integer> encode_coloring(const std::vector<std::vector<unsigned>>& coloring);

} // namespace eppe
