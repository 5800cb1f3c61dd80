#pragma once

#include "eppe/formula.hpp"
#include "eppe/ledger.hpp"
#include "eppe/poly.hpp"
#include "eppe/term.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eppe {

// Equations asserted to be zero, organised in groups that are squared and
// summed together when rendered as a single term.
struct GadgetResult {
    std::vector<std::vector<Term>> groups;
    VarLedger ledger;
    std::vector<std::string> notes;

    std::vector<Term> equations() const;
    // Group of one: e^2. Larger group: (sum of e^2)^2. Then summed.
    Term as_term() const;
    Formula as_formula() const;
    std::vector<std::string> vars() const { return ledger.names(); }

    void append(GadgetResult other);
};

Term group_term(const std::vector<Term>& group);

// --- remainders, orderings, divisibility -----------------------------------

// y = rem(a, D): y + v + 1 = D and D*v' + y = a.
GadgetResult g_remainder(NameSupply& ns, const Term& y, const Term& a, const Term& D);
GadgetResult g_less(NameSupply& ns, const Term& a, const Term& b);
GadgetResult g_less_equal(NameSupply& ns, const Term& a, const Term& b);
GadgetResult g_divides(NameSupply& ns, const Term& b, const Term& c);
// x = y (mod r) through both residues; the residues come first in the ledger.
GadgetResult g_congruent(NameSupply& ns, const Term& x, const Term& y, const Term& r);

// The two remainder equations with caller-chosen unknowns.
std::vector<Term> remainder_equations(const Term& y, const Term& a, const Term& D, const Term& v,
                                      const Term& vq);

// --- Cantor pairing ---------------------------------------------------------

Integer cantor_J(const Integer& m, const Integer& n);
// 2z - (m+n)^2 - 3m - n, zero iff z = J(m, n).
Term cantor_equation(const Term& z, const Term& m, const Term& n);

// --- Pell sequences ---------------------------------------------------------

// (chi_A(n), psi_A(n)); A >= 2.
std::pair<Integer, Integer> pell(const Integer& A, unsigned n);
Integer psi(const Integer& A, unsigned n);
Integer chi(const Integer& A, unsigned n);

struct PellWitness {
    Integer A, B, C, D, E, F, G, H, I;
    Integer i, j;
    Integer chi;
};

// The deterministic chain D..I for given A, B, C, i, j.
PellWitness pell_chain(const Integer& A, const Integer& B, const Integer& C, const Integer& i,
                       const Integer& j);

// Ledger order: D, E, F, G, H, I, i, j, s (DFI = s^2), t (F t = H - C), v (B + v = C).
GadgetResult g_psi(NameSupply& ns, const Term& A, const Term& B, const Term& C);

// --- relation combining -----------------------------------------------------

struct RelationCombineInput {
    std::vector<Term> A;
    Term B;
    Term C;
    Term D;
    Term n;
    std::optional<Term> W; // defaults to 1 + sum A_i^2
};

// Product over sign choices in placeholder symbols %X, %Y, %s1.., %W.
Poly relation_combine_product(std::size_t q);
// The product with every s_i^2 replaced by %A_i; throws if an odd power of
// some s_i survives.
Poly relation_combine_reduced(std::size_t q);
Term relation_combine(const RelationCombineInput& in);

// --- binomial coefficients --------------------------------------------------

// y = C(n, s) by base-(2^n+1) digit extraction. With `position_var`, an extra
// unknown p = s carries the digit position.
GadgetResult g_binomial_expdioph(NameSupply& ns, const Term& y, const Term& n, const Term& s,
                                 bool position_var = false);

// The 18-unknown Diophantine representation of y = C(n, s).
GadgetResult g_binomial_dioph(NameSupply& ns, const Term& y, const Term& n, const Term& s);

// y1 | C(z, w) with u = y1 2^z, or (y1+1) 2^z when `literal`.
GadgetResult g_div_binomial(NameSupply& ns, const Term& y1, const Term& z, const Term& w,
                            bool literal = false);
Term div_binomial_base(const Term& y1, const Term& z, bool literal = false);

// --- size bounds ------------------------------------------------------------

// Majorant of G with the given substitutions; other variables must be params.
Term build_B_bound(const Term& G, const std::map<std::string, Term>& subs,
                   const std::vector<std::string>& params = {});

// b + (b+1)^(b+1) ((b+1)^(b+1) B)^(w^m)
Term strong_ineq_bound(const Term& b, const Term& B, const Term& w, unsigned m);
// q > bound, as bound + 1 + v - q = 0.
GadgetResult g_strong_ineq(NameSupply& ns, const Term& q, const Term& b, const Term& B, const Term& w,
                           unsigned m);

std::vector<std::string> gadget_catalog();

} // namespace eppe
