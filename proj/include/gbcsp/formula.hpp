#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gbcsp/rational.hpp"
#include "gbcsp/relation.hpp"

namespace gbcsp {

// A 0/1 assignment to variables 1..n, stored 0-based in packed words.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::size_t n, bool fill = false);

    // '0'/'1' characters, variable 1 first.
    static Assignment from_bits(std::string_view bits);
    // Variable 1 is the least significant bit.
    static Assignment from_integer(std::uint64_t encoded, std::size_t n);

    std::size_t size() const { return n_; }
    bool get(std::size_t var) const { return (words_[var >> 6] >> (var & 63)) & 1u; }
    void set(std::size_t var, bool value);
    void flip(std::size_t var) { words_[var >> 6] ^= std::uint64_t{1} << (var & 63); }

    std::uint64_t to_integer() const; // n <= 64 only
    std::string to_bits() const;

    std::size_t hamming(const Assignment& o) const;
    std::size_t agreement(const Assignment& o) const { return n_ - hamming(o); }

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

// Fraction of variables on which two assignments agree, exact.
Rational overlap(const Assignment& a, const Assignment& b);

// n variables plus applied constraints: (relation index, ordered tuple of
// distinct variables). Variables are 0-based internally; text formats are
// 1-based. Treated as immutable once built.
class Formula {
public:
    Formula(std::uint32_t num_vars, ConstraintSetPtr set);

    void add(std::uint32_t relation, std::span<const std::uint32_t> vars);

    std::uint32_t num_vars() const { return num_vars_; }
    std::size_t num_applications() const { return rel_.size(); }
    const ConstraintSet& constraint_set() const { return *set_; }
    const ConstraintSetPtr& constraint_set_ptr() const { return set_; }

    std::uint32_t relation_of(std::size_t app) const { return rel_[app]; }
    std::span<const std::uint32_t> vars_of(std::size_t app) const {
        std::size_t k = static_cast<std::size_t>(set_->arity());
        return {vars_.data() + app * k, k};
    }

    double density() const { return static_cast<double>(rel_.size()) / num_vars_; }
    bool evaluate(const Assignment& a) const;

    // Same n and same sequence of (truth table, tuple); relation names are
    // ignored so a DIMACS round trip compares equal.
    bool structurally_equal(const Formula& o) const;

private:
    std::uint32_t num_vars_;
    ConstraintSetPtr set_;
    std::vector<std::uint32_t> rel_;
    std::vector<std::uint32_t> vars_; // flat, arity-stride
};

} // namespace gbcsp
