#include "eppe/ledger.hpp"

#include "eppe/errors.hpp"

#include <sstream>

namespace eppe {

void VarLedger::add(const std::string& name, const std::string& origin,
                    const std::string& display_name)
{
    if (index_.count(name))
        throw InvalidArgument("variable already in ledger: " + name);
    index_[name] = entries_.size();
    entries_.push_back({name, origin, display_name});
}

void VarLedger::append(const VarLedger& other)
{
    for (const auto& e : other.entries_)
        add(e.name, e.origin, e.display_name);
}

void VarLedger::set_display_name(const std::string& name, const std::string& display_name)
{
    auto it = index_.find(name);
    if (it == index_.end())
        throw InvalidArgument("variable not in ledger: " + name);
    entries_[it->second].display_name = display_name;
}

const LedgerEntry& VarLedger::at(const std::string& name) const
{
    auto it = index_.find(name);
    if (it == index_.end())
        throw InvalidArgument("variable not in ledger: " + name);
    return entries_[it->second];
}

std::vector<std::string> VarLedger::names() const
{
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_)
        out.push_back(e.name);
    return out;
}

std::map<std::string, std::string> VarLedger::display_names() const
{
    std::map<std::string, std::string> out;
    for (const auto& e : entries_)
        if (!e.display_name.empty())
            out[e.name] = e.display_name;
    return out;
}

std::map<std::string, std::size_t> VarLedger::count_by_origin() const
{
    std::map<std::string, std::size_t> out;
    for (const auto& e : entries_)
        ++out[e.origin];
    return out;
}

std::string VarLedger::to_tsv() const
{
    std::ostringstream os;
    os << "variable\torigin\tpaper-name\n";
    for (const auto& e : entries_)
        os << e.name << '\t' << e.origin << '\t' << e.display_name << '\n';
    return os.str();
}

std::string NameSupply::fresh(const std::string& origin, const std::string& role)
{
    return origin + "." + role + "@" + std::to_string(next_++);
}

} // namespace eppe
