#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "gbcsp/formula.hpp"

namespace gbcsp {

enum class TextFormat { Gbcsp, Dimacs };

// gbcsp text format, one record per line:
//   c <comment>
//   p gbcsp <n> <m>
//   r <name> <k> <s> <row_1> ... <row_s>
//   a <name> <v1> ... <vk>
// Rows are decimal integers under the argument-1-is-LSB rule; variables are
// 1-indexed. Standard DIMACS CNF is accepted for clausal formulas.
Formula parse_formula(std::istream& in, TextFormat format);
Formula parse_formula(std::string_view text, TextFormat format);

// Relation records only ('r' lines and comments), as used by `classify`.
ConstraintSet parse_constraint_set(std::string_view text);

std::string emit_formula(const Formula& formula, TextFormat format);
std::string emit_constraint_set(const ConstraintSet& set);

// Detects "p cnf" vs "p gbcsp" (or a leading relation record).
std::optional<TextFormat> sniff_format(std::string_view text);

const char* to_string(TextFormat format);
std::optional<TextFormat> parse_format_name(std::string_view name);

} // namespace gbcsp
