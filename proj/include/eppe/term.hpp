#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace eppe {

using Integer = mpz_class;

// Values of variables. Variables range over the naturals.
using Assignment = std::map<std::string, Integer>;

struct EvalLimits {
    // Largest bit length an intermediate value may reach.
    std::size_t max_bits = std::size_t{1} << 20;
};

// Immutable expression tree over the integers. Copies share structure.
class Term {
public:
    enum class Kind { Const, Var, Sum, Product, Difference, Power };

    Term(); // Const 0
    Term(long value);
    Term(int value) : Term(static_cast<long>(value)) {}
    Term(const Integer& value);

    static Term constant(const Integer& value);
    static Term var(std::string name);
    static Term sum(std::vector<Term> terms);
    static Term product(std::vector<Term> terms);
    static Term difference(Term lhs, Term rhs);
    static Term power(Term base, Term exponent);

    Kind kind() const;
    const Integer& value() const;     // Const only
    const std::string& name() const;  // Var only
    std::span<const Term> children() const;

    bool is_const() const { return kind() == Kind::Const; }
    bool is_var() const { return kind() == Kind::Var; }
    bool is_const(long v) const;

    friend bool operator==(const Term& a, const Term& b);
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

    // Identity of the shared node, for memoization.
    const void* id() const { return node_.get(); }

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

Term var(std::string name);
Term pow(Term base, Term exponent);

// Builder operators. `+` and `*` extend an existing n-ary node on the left.
Term operator+(const Term& a, const Term& b);
Term operator*(const Term& a, const Term& b);
Term operator-(const Term& a, const Term& b);

// Adds a natural constant, folding into a trailing `+ c` or `- c`.
Term plus_const(const Term& t, long c);

Integer eval_term(const Term& t, const Assignment& env, const EvalLimits& limits = {});

std::set<std::string> free_vars(const Term& t);
void collect_vars(const Term& t, std::set<std::string>& out);
bool mentions(const Term& t, const std::string& name);

std::size_t node_count(const Term& t);
std::size_t power_nesting(const Term& t);

// Simultaneous substitution of variables by terms.
Term substitute(const Term& t, const std::map<std::string, Term>& subs);
Term rename(const Term& t, const std::map<std::string, std::string>& names);

// True when t >= 0 under every assignment of naturals, judged by its shape:
// constants, variables, even powers, and sums and products of such terms.
bool syntactically_nonnegative(const Term& t);

// Σ tᵢ²; a single term yields t².
Term sum_of_squares(std::span<const Term> terms);
Term square(const Term& t);

} // namespace eppe
