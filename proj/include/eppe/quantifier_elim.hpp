#pragma once

#include "eppe/formula.hpp"
#include "eppe/gadgets.hpp"
#include "eppe/ledger.hpp"
#include "eppe/term.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eppe {

// forall y < b  exists x_1..x_m  [G = 0]
struct BuqInstance {
    std::string y;
    Term b;
    std::vector<std::string> xs;
    Term G;
    // Variables of G other than y and the x_l; includes enclosing existentials.
    std::vector<std::string> params;
};

// Accepts "forall y < b (exists xs (= G 0))"; a non-strict bound becomes b + 1.
BuqInstance buq_from_formula(const Formula& f, const std::vector<std::string>& params);
Formula to_formula(const BuqInstance& inst);

// Peels an outer existential block: exists cs (forall y < b (exists xs [G = 0])).
struct BuqSplit {
    std::vector<std::string> carried;
    BuqInstance inst;
};
BuqSplit split_buq(const Document& doc);

enum class ConditionKind { CongruenceModBinomial, Identity, StrongInequality, DividesBinomial };

const char* to_string(ConditionKind k);

struct Condition {
    ConditionKind kind;
    // CongruenceModBinomial: poly.  Identity: z_0.  DividesBinomial: z_l.
    Term subject;
    unsigned index = 0; // l for DividesBinomial
};

struct EquationSystem {
    std::vector<Condition> conditions;
    VarLedger ledger;       // q, w, z_0..z_m
    Term q, w, b;
    std::vector<Term> z;    // z_0..z_m
    Term poly;              // G with y -> z_0, x_l -> z_l
    Term B;                 // bound polynomial
    unsigned m = 0;
    std::vector<std::string> params;
};

struct ElimNames {
    std::string q = "q";
    std::string w = "w";
    std::string z = "z"; // z0, z1, ...
};

EquationSystem eliminate_buq(const BuqInstance& inst, const ElimNames& names = {});

// Truth of one condition under a full assignment.
bool condition_holds(const EquationSystem& sys, const Condition& c, const Assignment& env,
                     const EvalLimits& limits = {});
bool system_holds(const EquationSystem& sys, const Assignment& env, const EvalLimits& limits = {});
std::string describe(const EquationSystem& sys, const Condition& c);

struct FlattenResult {
    Document document;            // exists [unknowns] (single equation)
    Term equation;
    VarLedger ledger;             // carried unknowns first, then the system and gadgets
    std::vector<Term> fixed_groups;   // squared group terms except the divides-binomial blocks
    std::vector<Term> divides_groups; // one squared group per l
    std::vector<std::string> y1_block; // y1, y2
    std::vector<std::string> j_block;
    std::vector<std::string> h_block;
    std::vector<std::vector<std::string>> divides_vars; // per l: f, g, m, s
};

struct FlattenOptions {
    // Existential unknowns of the enclosing formula, listed first in the ledger.
    std::vector<std::string> carried;
    std::vector<std::string> params;
};

FlattenResult flatten(const EquationSystem& sys, NameSupply& ns, const FlattenOptions& opts = {});

// Collapses forall x <= b1 forall y <= b2 exists ... [M = 0] (optionally below an
// outer exists block) into exists z forall t < z+1 exists x, y, ... .
struct CollapseNames {
    std::string z = "z";
    std::string t = "t";
    std::string slack1 = "v_x";
    std::string slack2 = "v_y";
};

Formula collapse_pair_quantifiers(const Formula& f, const CollapseNames& names = {});

// Values for q, w, z_0..z_m satisfying every condition of eliminate_buq(inst).
// witnesses[y] lists x_1..x_m for y = 0..b-1.
Assignment construct_dpr_witness(const BuqInstance& inst, const EquationSystem& sys,
                                 const std::vector<std::vector<Integer>>& witnesses,
                                 const Assignment& params = {}, const EvalLimits& limits = {});
Assignment construct_dpr_witness(const BuqInstance& inst,
                                 const std::vector<std::vector<Integer>>& witnesses,
                                 const Assignment& params = {}, const EvalLimits& limits = {});

} // namespace eppe
