#pragma once

#include <optional>
#include <string>
#include <utility>

#include "gbcsp/relation.hpp"

namespace gbcsp {

// Threshold-type classification of a constraint set: not interesting, coarse
// via a forced literal, coarse via a forced inequality, or sharp.
enum class ThresholdVerdict { NotInteresting, CoarseUnitDependence, CoarseXorDependence, Sharp };

const char* to_string(ThresholdVerdict v);

struct ClassifyWitness {
    std::string relation; // triggering relation; empty for NotInteresting
    int position = 0;     // 1-based argument forced to `value`
    int value = 0;
    int position_j = 0;   // 1-based partner for the inequality case (position < position_j)
    std::string note;     // NotInteresting: which excluder is missing
};

struct ThresholdClass {
    ThresholdVerdict verdict;
    std::optional<ClassifyWitness> witness; // present for every verdict except Sharp
};

// True iff every satisfying assignment of c1 satisfies c2 (row subset).
bool is_implicate(const Relation& c1, const Relation& c2);

// Some (position, value) with every satisfying row fixing that argument;
// ties: smallest position, then value 0 before 1. Positions are 1-based.
std::optional<std::pair<int, int>> strongly_depends_on_literal(const Relation& rel);

// Smallest (i, j), i < j, with argument i != argument j in every row.
std::optional<std::pair<int, int>> strongly_depends_on_2xor(const Relation& rel);

// Some relation excludes the all-zeros row and some relation excludes the
// all-ones row.
bool is_interesting(const ConstraintSet& set);

ThresholdClass classify(const ConstraintSet& set);

} // namespace gbcsp
