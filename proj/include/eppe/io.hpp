#pragma once

#include "eppe/formula.hpp"
#include "eppe/term.hpp"

#include <map>
#include <string>
#include <string_view>

namespace eppe {

enum class EmitFormat { Sexpr, Plain, Latex };

EmitFormat parse_emit_format(std::string_view name);

// Display names substituted at emission time (canonical name -> display name).
using NameMap = std::map<std::string, std::string>;

Term parse_term(std::string_view text);
Formula parse_formula(std::string_view text);

// Optional "(params ...)" header followed by one formula. With a header,
// every free variable must be declared.
Document parse_document(std::string_view text);

std::string emit(const Term& t, EmitFormat fmt, const NameMap& names = {});
std::string emit(const Formula& f, EmitFormat fmt, const NameMap& names = {});
std::string emit(const Document& d, EmitFormat fmt, const NameMap& names = {});

// LaTeX rendering of an identifier: z12 -> z_{12}, v_18 -> v_{18}.
std::string latex_identifier(const std::string& name);

} // namespace eppe
