#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gbcsp/error.hpp"

namespace gbcsp {

inline constexpr int kMaxArity = 10; // truth tables stay explicit

// A Boolean relation of arity k given by its set of satisfying rows.
// Bit (i-1) of a row holds the value of argument i; argument 1 is the LSB.
class Relation {
public:
    Relation(std::string name, int arity, std::vector<std::uint32_t> rows);

    const std::string& name() const { return name_; }
    int arity() const { return arity_; }
    const std::vector<std::uint32_t>& rows() const { return rows_; } // sorted, distinct
    std::uint32_t table_size() const { return 1u << arity_; }

    bool allows(std::uint32_t row) const {
        return (mask_[row >> 6] >> (row & 63)) & 1u;
    }
    bool evaluate(std::span<const std::uint8_t> args) const;

    // OR-of-literals: every row but one is satisfying.
    bool is_clause() const { return rows_.size() == table_size() - 1; }
    std::uint32_t falsifying_row() const; // clauses only

    bool same_table(const Relation& o) const { return arity_ == o.arity_ && rows_ == o.rows_; }

    static Relation or_clause(int arity, std::uint32_t falsifying_row);
    static Relation or_clause(std::string name, int arity, std::uint32_t falsifying_row);
    static Relation xor2();
    static Relation one_in(int arity);

private:
    std::string name_;
    int arity_;
    std::vector<std::uint32_t> rows_;
    std::array<std::uint64_t, (std::size_t{1} << kMaxArity) / 64> mask_{};
};

// Relations of one common arity with unique names.
class ConstraintSet {
public:
    explicit ConstraintSet(std::vector<Relation> relations);

    int arity() const { return arity_; }
    std::size_t size() const { return relations_.size(); }
    const Relation& operator[](std::size_t i) const { return relations_[i]; }
    const std::vector<Relation>& relations() const { return relations_; }
    std::optional<std::size_t> index_of(std::string_view name) const;
    // index of a relation with this truth table, if any
    std::optional<std::size_t> index_of_table(const Relation& rel) const;

    // Named sets: "2sat", "ksat:<k>", "xor2", "1in:<k>".
    static ConstraintSet builtin(std::string_view spec);
    static ConstraintSet full_ksat(int k);

private:
    std::vector<Relation> relations_;
    int arity_;
};

using ConstraintSetPtr = std::shared_ptr<const ConstraintSet>;

} // namespace gbcsp
