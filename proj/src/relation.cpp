#include "gbcsp/relation.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

namespace gbcsp {

Relation::Relation(std::string name, int arity, std::vector<std::uint32_t> rows)
    : name_(std::move(name)), arity_(arity), rows_(std::move(rows)) {
    if (name_.empty()) throw InputError("relation: empty name");
    if (arity_ < 1 || arity_ > kMaxArity)
        throw InputError("relation '" + name_ + "': arity must be in [1, " + std::to_string(kMaxArity) + "]");
    if (rows_.empty()) throw InputError("relation '" + name_ + "': no satisfying rows");
    std::sort(rows_.begin(), rows_.end());
    rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
    if (rows_.back() >= table_size())
        throw InputError("relation '" + name_ + "': row " + std::to_string(rows_.back()) +
                         " out of range for arity " + std::to_string(arity_));
    for (std::uint32_t r : rows_) mask_[r >> 6] |= std::uint64_t{1} << (r & 63);
}

bool Relation::evaluate(std::span<const std::uint8_t> args) const {
    if (static_cast<int>(args.size()) != arity_)
        throw InputError("relation '" + name_ + "': expected " + std::to_string(arity_) +
                         " arguments, got " + std::to_string(args.size()));
    std::uint32_t row = 0;
    for (int i = 0; i < arity_; ++i)
        if (args[i]) row |= 1u << i;
    return allows(row);
}

std::uint32_t Relation::falsifying_row() const {
    if (!is_clause()) throw InputError("relation '" + name_ + "' is not an OR of literals");
    std::uint32_t expect = 0;
    for (std::uint32_t r : rows_) {
        if (r != expect) return expect;
        ++expect;
    }
    return expect;
}

Relation Relation::or_clause(int arity, std::uint32_t falsifying_row) {
    return or_clause("or" + std::to_string(arity) + "_" + std::to_string(falsifying_row),
                     arity, falsifying_row);
}

Relation Relation::or_clause(std::string name, int arity, std::uint32_t falsifying_row) {
    if (arity < 1 || arity > kMaxArity) throw InputError("or_clause: bad arity");
    if (falsifying_row >= (1u << arity)) throw InputError("or_clause: falsifying row out of range");
    std::vector<std::uint32_t> rows;
    rows.reserve((1u << arity) - 1);
    for (std::uint32_t r = 0; r < (1u << arity); ++r)
        if (r != falsifying_row) rows.push_back(r);
    return Relation(std::move(name), arity, std::move(rows));
}

Relation Relation::xor2() { return Relation("xor2", 2, {1, 2}); }

Relation Relation::one_in(int arity) {
    if (arity < 1 || arity > kMaxArity) throw InputError("one_in: bad arity");
    std::vector<std::uint32_t> rows;
    for (int i = 0; i < arity; ++i) rows.push_back(1u << i);
    return Relation("onein" + std::to_string(arity), arity, std::move(rows));
}

ConstraintSet::ConstraintSet(std::vector<Relation> relations) : relations_(std::move(relations)) {
    if (relations_.empty()) throw InputError("constraint set: no relations");
    arity_ = relations_.front().arity();
    std::unordered_set<std::string> names;
    for (const Relation& r : relations_) {
        if (r.arity() != arity_)
            throw InputError("constraint set: mixed arities (" + std::to_string(arity_) + " vs " +
                             std::to_string(r.arity()) + " in '" + r.name() + "')");
        if (!names.insert(r.name()).second)
            throw InputError("constraint set: duplicate relation name '" + r.name() + "'");
    }
}

std::optional<std::size_t> ConstraintSet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < relations_.size(); ++i)
        if (relations_[i].name() == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> ConstraintSet::index_of_table(const Relation& rel) const {
    for (std::size_t i = 0; i < relations_.size(); ++i)
        if (relations_[i].same_table(rel)) return i;
    return std::nullopt;
}

ConstraintSet ConstraintSet::full_ksat(int k) {
    if (k < 1 || k > kMaxArity) throw InputError("ksat: arity out of range");
    std::vector<Relation> rels;
    for (std::uint32_t fr = 0; fr < (1u << k); ++fr) rels.push_back(Relation::or_clause(k, fr));
    return ConstraintSet(std::move(rels));
}

ConstraintSet ConstraintSet::builtin(std::string_view spec) {
    auto arity_arg = [&](std::string_view prefix) -> std::optional<int> {
        if (spec.substr(0, prefix.size()) != prefix) return std::nullopt;
        int k = 0;
        auto rest = spec.substr(prefix.size());
        auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
        if (ec != std::errc{} || p != rest.data() + rest.size()) return std::nullopt;
        return k;
    };
    if (spec == "2sat") return full_ksat(2);
    if (spec == "xor2") return ConstraintSet({Relation::xor2()});
    if (auto k = arity_arg("ksat:")) return full_ksat(*k);
    if (auto k = arity_arg("1in:")) return ConstraintSet({Relation::one_in(*k)});
    throw InputError("unknown builtin constraint set '" + std::string(spec) +
                     "' (expected 2sat, ksat:<k>, xor2 or 1in:<k>)");
}

} // namespace gbcsp
