#pragma once

#include "eppe/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eppe {

// Sparse multivariate polynomial with integer coefficients.
class Poly {
public:
    // Sorted by variable name; exponents are positive.
    using Monomial = std::vector<std::pair<std::string, unsigned>>;

    Poly() = default;
    static Poly constant(const Integer& c);
    static Poly var(const std::string& name);

    const std::map<Monomial, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Integer constant_term() const;
    unsigned degree_in(const std::string& name) const;
    unsigned total_degree() const;
    std::vector<std::string> variables() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly pow(unsigned e) const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    Integer eval(const Assignment& env) const;

    // Replaces every occurrence of name^2 by `value`, leaving name^(e mod 2).
    Poly reduce_square(const std::string& name, const Poly& value) const;

    // Coefficients of a polynomial in one variable, lowest degree first.
    // Returns nullopt if any other variable occurs.
    std::optional<std::vector<Integer>> univariate(const std::string& name) const;

    Term to_term() const;

private:
    void add_term(const Monomial& m, const Integer& c);
    std::map<Monomial, Integer> terms_;
};

// Expands `t`. Variables bound in `known` are replaced by their values and
// fully known subterms are evaluated. Returns nullopt when an exponent still
// depends on an unknown variable.
std::optional<Poly> to_poly(const Term& t, const Assignment& known = {},
                            const EvalLimits& limits = {});

} // namespace eppe
