#pragma once

#include "eppe/formula.hpp"
#include "eppe/term.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace eppe {

enum class Verdict { Holds, Fails, Unknown };

const char* to_string(Verdict v);

struct CheckOptions {
    EvalLimits limits;
    // Maximum number of search nodes; unlimited when empty.
    std::optional<std::uint64_t> node_limit;
};

// Bounded model check. Existential witnesses are searched in [0, search_bound];
// an existential block yields Fails only when its search was exhaustive,
// i.e. no branch was cut by the bound or the evaluation budget.
Verdict check_sentence(const Formula& f, const Assignment& params, const Integer& search_bound,
                       const CheckOptions& opts = {});

// Searches for a solution of an equational formula, returning the values of
// the existential variables. nullopt if none exists within the bound.
std::optional<Assignment> find_witness(const Formula& f, const Assignment& params,
                                       const Integer& search_bound, const CheckOptions& opts = {});

// Values for some variables of an existential block, given everything bound
// above it.
using WitnessSupplier = std::function<Assignment(const Assignment& env)>;

// Evaluates a sentence whose equations sit directly under the block that binds
// their last variable. Each block takes the supplied values, solves its own
// equations for the rest and commits to the first solution. Holds is exact;
// every other outcome is reported as Unknown.
Verdict check_guided(const Formula& f, const Assignment& params, const WitnessSupplier& supply,
                     const Integer& search_bound, const CheckOptions& opts = {});

struct FormulaStats {
    std::size_t existential = 0;
    std::size_t universal = 0;
    std::vector<std::string> params;
    std::vector<std::string> existential_vars;
    std::vector<std::string> universal_vars;
    // Quantifier blocks along the leftmost path, e.g. "E4 A2 E20".
    std::string shape;
    std::size_t max_power_nesting = 0;
    std::size_t node_count = 0;
    std::size_t equations = 0;
};

FormulaStats stats(const Formula& f, const std::vector<std::string>& params = {});
std::string to_text(const FormulaStats& s);

} // namespace eppe
