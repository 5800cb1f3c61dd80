#pragma once

#include "eppe/formula.hpp"
#include "eppe/gadgets.hpp"
#include "eppe/io.hpp"
#include "eppe/ledger.hpp"
#include "eppe/quantifier_elim.hpp"
#include "eppe/term.hpp"

#include <string>
#include <vector>

namespace eppe {

// --- PH^2 -------------------------------------------------------------------

struct Ph2BuildOptions {
    // Reproduce the printed forms verbatim: the unguarded x < y summand and the
    // (y1 + 1) 2^z divides-binomial base.
    bool literal = false;
};

struct Ph2Artifacts {
    std::vector<std::string> params; // k, M, a, b, r
    Formula e3 = Formula::equation(Term());
    Formula e4 = Formula::equation(Term());
    Formula e6 = Formula::equation(Term());
    BuqInstance buq;
    Term P;
    Term B;       // majorant used in the strong inequality
    Term printed_B; // the simplified bound as printed
    EquationSystem system;
    FlattenResult flat;
    Document final;
    VarLedger ledger; // final unknowns under their display names
    NameMap display;  // internal name -> display name for the flattened groups
};

Ph2Artifacts build_ph2(const Ph2BuildOptions& opts = {});

// Final equation with the divides-binomial blocks folded into one sum.
std::string ph2_latex(const Ph2Artifacts& art);

// --- Goodstein ----------------------------------------------------------------

// A quantifier-prefixed gadget with its own unknowns.
struct PrefixedGadget {
    Formula formula = Formula::equation(Term());
    // Equivalent form with each block's equations placed under that block.
    Formula staged = Formula::equation(Term());
    VarLedger ledger;
};

// c is digit j of n in the given base (four unknowns).
GadgetResult g_elem(NameSupply& ns, const Term& c, const Term& n, const Term& base, const Term& j);

// f1 * f2 for sum-of-squares terms; zero iff one of the groups vanishes.
Term g_disjunction(const std::vector<Term>& f1, const std::vector<Term>& f2);

// l = HP(n): base^l <= n < base^(l+1) with n != 0, or n = l = 0.
GadgetResult g_HP(NameSupply& ns, const Term& l, const Term& n, const Term& base);

// out = RB(n): base digits of n reread in base + 1, exponents untouched.
PrefixedGadget g_RB(NameSupply& ns, const Term& out, const Term& n, const Term& base);

// L = level(n): iterating HP from n reaches a value below the base after L steps.
PrefixedGadget g_level(NameSupply& ns, const Term& L, const Term& n, const Term& base);

// p = Exp_k(s): c (base+1)^p + y = s with c = Elem(m, base, k).
GadgetResult g_exp_k(NameSupply& ns, const Term& p, const Term& s, const Term& m, const Term& base,
                     const Term& k);

// out = T(n): n in hereditary base `base` with every base replaced by base + 1.
PrefixedGadget g_bump(NameSupply& ns, const Term& out, const Term& n, const Term& base);

struct DisplayBlock {
    char quantifier; // 'E' or 'A'
    std::vector<std::string> vars;
};

struct GoodsteinErratum {
    std::size_t display_total = 0;
    std::size_t our_total = 0;
    std::vector<DisplayBlock> display_prefix;
    std::vector<std::string> unbound_in_display;
    std::vector<std::string> issues;
};

struct GoodsteinArtifacts {
    std::vector<std::string> params; // m, a
    PrefixedGadget elem, hp, rb, level, exp_k, bump;
    Document final;
    Formula staged = Formula::equation(Term());
    VarLedger ledger; // every quantified variable, outermost first
    std::string shape;
    GoodsteinErratum erratum;
};

GoodsteinArtifacts build_goodstein();

// Quantifier blocks of the printed display, with index ranges expanded.
std::vector<DisplayBlock> goodstein_display_prefix();
std::string erratum_report(const GoodsteinArtifacts& art);

} // namespace eppe
