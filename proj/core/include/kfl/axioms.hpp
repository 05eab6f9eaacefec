#pragma once

#include <span>
#include <string_view>

#include "kfl/formula.hpp"

namespace kfl {

/// The registered schemes, in order: A1, A2, A3, A4, A5a, A5b, A6, A7, MP,
/// GODEL, LIN. Templates use the metavariables PHI, PSI and THETA.
std::span<const Scheme> all_schemes();

/// The axioms A1..A7 and the rule MP.
std::span<const Scheme> bl_schemes();

/// Case-insensitive lookup. Throws UnknownNameError listing valid names.
const Scheme& get_scheme(std::string_view name);

}  // namespace kfl
