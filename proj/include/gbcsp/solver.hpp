#pragma once

#include <cstdint>
#include <optional>

#include "gbcsp/formula.hpp"

namespace gbcsp {

// One satisfying assignment or a definitive UNSAT. Complete: backtracking
// with propagation for general relations; formulas whose relations all have
// arity 2 go through the polynomial implication-graph decision instead.
// The seed varies the branching order / literal polarities so repeated calls
// sample different solutions, reproducibly.
std::optional<Assignment> solve_one(const Formula& phi, std::uint64_t polarity_seed);

// Equivalent width-2 clausal formula for a formula whose relations all have
// arity 2 (every arity-2 relation is a conjunction of width-2 clauses).
// Returns nullopt for other arities. Always-true relations compile to no
// clauses.
std::optional<Formula> to_clausal_binary(const Formula& phi);

} // namespace gbcsp
