#include "gbcsp/classify.hpp"

namespace gbcsp {

const char* to_string(ThresholdVerdict v) {
    switch (v) {
        case ThresholdVerdict::NotInteresting: return "NotInteresting";
        case ThresholdVerdict::CoarseUnitDependence: return "CoarseUnitDependence";
        case ThresholdVerdict::CoarseXorDependence: return "CoarseXorDependence";
        case ThresholdVerdict::Sharp: return "Sharp";
    }
    return "?";
}

bool is_implicate(const Relation& c1, const Relation& c2) {
    if (c1.arity() != c2.arity()) throw InputError("is_implicate: arities differ");
    for (std::uint32_t row : c1.rows())
        if (!c2.allows(row)) return false;
    return true;
}

std::optional<std::pair<int, int>> strongly_depends_on_literal(const Relation& rel) {
    for (int i = 0; i < rel.arity(); ++i) {
        for (int value = 0; value <= 1; ++value) {
            bool forced = true;
            for (std::uint32_t row : rel.rows()) {
                if (static_cast<int>((row >> i) & 1u) != value) {
                    forced = false;
                    break;
                }
            }
            if (forced) return std::make_pair(i + 1, value);
        }
    }
    return std::nullopt;
}

std::optional<std::pair<int, int>> strongly_depends_on_2xor(const Relation& rel) {
    if (rel.arity() < 2) return std::nullopt;
    for (int i = 0; i < rel.arity(); ++i) {
        for (int j = i + 1; j < rel.arity(); ++j) {
            bool unequal = true;
            for (std::uint32_t row : rel.rows()) {
                if (((row >> i) & 1u) == ((row >> j) & 1u)) {
                    unequal = false;
                    break;
                }
            }
            if (unequal) return std::make_pair(i + 1, j + 1);
        }
    }
    return std::nullopt;
}

bool is_interesting(const ConstraintSet& set) {
    bool excludes_zeros = false, excludes_ones = false;
    for (const Relation& r : set.relations()) {
        if (!r.allows(0)) excludes_zeros = true;
        if (!r.allows(r.table_size() - 1)) excludes_ones = true;
    }
    return excludes_zeros && excludes_ones;
}

ThresholdClass classify(const ConstraintSet& set) {
    bool excludes_zeros = false, excludes_ones = false;
    for (const Relation& r : set.relations()) {
        if (!r.allows(0)) excludes_zeros = true;
        if (!r.allows(r.table_size() - 1)) excludes_ones = true;
    }
    if (!excludes_zeros || !excludes_ones) {
        ClassifyWitness w;
        w.note = !excludes_zeros ? "no relation excludes the all-zeros assignment"
                                 : "no relation excludes the all-ones assignment";
        return {ThresholdVerdict::NotInteresting, w};
    }
    for (const Relation& r : set.relations()) {
        if (auto unit = strongly_depends_on_literal(r)) {
            ClassifyWitness w;
            w.relation = r.name();
            w.position = unit->first;
            w.value = unit->second;
            return {ThresholdVerdict::CoarseUnitDependence, w};
        }
    }
    for (const Relation& r : set.relations()) {
        if (auto xorw = strongly_depends_on_2xor(r)) {
            ClassifyWitness w;
            w.relation = r.name();
            w.position = xorw->first;
            w.position_j = xorw->second;
            return {ThresholdVerdict::CoarseXorDependence, w};
        }
    }
    return {ThresholdVerdict::Sharp, std::nullopt};
}

} // namespace gbcsp
