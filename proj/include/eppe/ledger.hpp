#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace eppe {

struct LedgerEntry {
    std::string name;
    std::string origin;
    std::string display_name; // empty when unmapped
};

// Record of fresh variables and the gadget that introduced each one.
class VarLedger {
public:
    void add(const std::string& name, const std::string& origin,
             const std::string& display_name = {});
    void append(const VarLedger& other);
    void set_display_name(const std::string& name, const std::string& display_name);

    bool contains(const std::string& name) const { return index_.count(name) != 0; }
    const LedgerEntry& at(const std::string& name) const;
    const std::vector<LedgerEntry>& entries() const { return entries_; }
    std::size_t total() const { return entries_.size(); }
    std::vector<std::string> names() const;

    // Variable name to display name, for mapped entries only.
    std::map<std::string, std::string> display_names() const;
    std::map<std::string, std::size_t> count_by_origin() const;

    // Tab-separated: variable, origin, paper-name.
    std::string to_tsv() const;

private:
    std::vector<LedgerEntry> entries_;
    std::map<std::string, std::size_t> index_;
};

// Produces canonical fresh names of the form origin.role@N.
class NameSupply {
public:
    std::string fresh(const std::string& origin, const std::string& role);
    std::size_t issued() const { return next_; }

private:
    std::size_t next_ = 1;
};

// Variable costs of the two forms of the size condition on q.
struct CostModel {
    unsigned gamma = 5;
    bool exponential_primitive = false;

    unsigned exp_cost() const { return exponential_primitive ? 0 : gamma + 1; }
    // Factorial divisibility condition.
    unsigned save1() const { return 10 * exp_cost() + 22; }
    // Strong inequality.
    unsigned save2() const { return 2 * exp_cost() + 2; }
    unsigned conserved() const { return save1() - save2(); }
};

} // namespace eppe
