#pragma once

#include "eppe/term.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace eppe {

// Quantifier-prefixed arithmetic formula over the naturals.
class Formula {
public:
    enum class Kind { Equation, And, Exists, ForallBounded };

    static Formula equation(Term t); // t = 0
    static Formula conj(std::vector<Formula> parts);
    static Formula exists(std::vector<std::string> vars, Formula body);
    // strict: var < bound, otherwise var <= bound
    static Formula forall(std::string var, Term bound, bool strict, Formula body);

    Kind kind() const;
    const Term& term() const;                    // Equation, ForallBounded (bound)
    const std::vector<Formula>& parts() const;   // And
    const std::vector<std::string>& vars() const; // Exists
    const std::string& bound_var() const;        // ForallBounded
    bool strict() const;                         // ForallBounded
    const Formula& body() const;                 // Exists, ForallBounded

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// A formula together with its declared parameters.
struct Document {
    std::vector<std::string> params;
    Formula formula = Formula::equation(Term());
};

std::set<std::string> free_vars(const Formula& f);

// Throws InvalidArgument if a variable is bound twice on a root-to-leaf path
// or if a free variable is not among `params`.
void validate(const Formula& f, const std::vector<std::string>& params);

Formula rename(const Formula& f, const std::map<std::string, std::string>& names);

// Equational formulas contain only Equation, And and Exists nodes.
bool is_equational(const Formula& f);

} // namespace eppe
