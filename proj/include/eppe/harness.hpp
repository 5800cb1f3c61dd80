#pragma once

#include "eppe/term.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eppe {

// name = lo..hi, both ends inclusive; the ends may mention earlier names.
struct RangeSpec {
    std::string name;
    Term lo;
    Term hi;
};

RangeSpec parse_range(const std::string& text);

struct HarnessOptions {
    Integer search_bound = 100000;
    std::optional<std::uint64_t> node_limit = 2000000;
    EvalLimits limits;
    unsigned jobs = 1;
    // Pell indices i, j tried by the psi-system gadget.
    unsigned pell_index_limit = 8;
};

struct TupleRecord {
    Assignment params;
    std::string gadget;   // gadget-side value: "1"/"0" for predicates, else the computed output
    std::string oracle;
    bool exact = true;    // gadget side decided without a search cut
    bool agree = true;
    bool counterexample = false;
    bool flagged = false; // outside the range the equivalence is claimed for
    std::string strategy;
    Assignment witness;   // inputs plus the unknowns the gadget side computed
};

struct EquivalenceReport {
    std::string gadget;
    std::vector<RangeSpec> ranges;
    Integer search_bound;
    bool expect_counterexamples = false;
    std::size_t tested = 0;
    std::size_t agreements = 0;
    std::size_t unresolved = 0;
    std::size_t flagged = 0;
    std::vector<TupleRecord> records; // tuple order
    double seconds = 0;

    std::vector<TupleRecord> counterexamples() const;
    // Exit status of a verify run: counterexamples are expected exactly for erratum gadgets.
    bool passed() const;
    std::string to_text() const;
    std::string to_json() const;
};

struct GadgetInfo {
    std::string name;
    std::vector<std::string> inputs;
    std::vector<std::string> default_ranges;
    bool expect_counterexamples = false;
    // Only a satisfied gadget with a false oracle counts against it.
    bool one_sided = false;
    std::string description;
};

std::vector<GadgetInfo> registered_gadgets();
const GadgetInfo& gadget_info(const std::string& name);

// Decides each tuple on the gadget side and against the oracle. Empty ranges
// fall back to the gadget's defaults.
EquivalenceReport equivalence_harness(const std::string& gadget, std::vector<RangeSpec> ranges,
                                      const HarnessOptions& opts = {});

// Recomputes one record; true when both sides reproduce it.
bool replay(const std::string& gadget, const TupleRecord& record, const HarnessOptions& opts = {});

} // namespace eppe
