#include "gbcsp/formula.hpp"

#include <bit>

namespace gbcsp {

Assignment::Assignment(std::size_t n, bool fill)
    : n_(n), words_((n + 63) / 64, fill ? ~std::uint64_t{0} : 0) {
    if (fill && n_ % 64 != 0 && !words_.empty())
        words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
}

Assignment Assignment::from_bits(std::string_view bits) {
    Assignment a(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            a.set(i, true);
        else if (bits[i] != '0')
            throw InputError("assignment: expected '0'/'1' characters");
    }
    return a;
}

Assignment Assignment::from_integer(std::uint64_t encoded, std::size_t n) {
    if (n > 64) throw InputError("assignment: integer encoding limited to 64 variables");
    if (n < 64 && (encoded >> n) != 0) throw InputError("assignment: encoded value out of range");
    Assignment a(n);
    if (!a.words_.empty()) a.words_[0] = encoded;
    return a;
}

void Assignment::set(std::size_t var, bool value) {
    std::uint64_t bit = std::uint64_t{1} << (var & 63);
    if (value)
        words_[var >> 6] |= bit;
    else
        words_[var >> 6] &= ~bit;
}

std::uint64_t Assignment::to_integer() const {
    if (n_ > 64) throw InputError("assignment: integer encoding limited to 64 variables");
    return words_.empty() ? 0 : words_[0];
}

std::string Assignment::to_bits() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

std::size_t Assignment::hamming(const Assignment& o) const {
    if (n_ != o.n_) throw InputError("hamming: assignment lengths differ");
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) d += std::popcount(words_[w] ^ o.words_[w]);
    return d;
}

Rational overlap(const Assignment& a, const Assignment& b) {
    if (a.size() == 0) throw InputError("overlap: empty assignments");
    return Rational(static_cast<std::int64_t>(a.agreement(b)), static_cast<std::int64_t>(a.size()));
}

Formula::Formula(std::uint32_t num_vars, ConstraintSetPtr set)
    : num_vars_(num_vars), set_(std::move(set)) {
    if (num_vars_ < 1) throw InputError("formula: need at least one variable");
    if (!set_) throw InputError("formula: null constraint set");
}

void Formula::add(std::uint32_t relation, std::span<const std::uint32_t> vars) {
    if (relation >= set_->size()) throw InputError("formula: relation index out of range");
    std::size_t k = static_cast<std::size_t>(set_->arity());
    if (vars.size() != k) throw InputError("formula: tuple size does not match arity");
    for (std::size_t i = 0; i < k; ++i) {
        if (vars[i] >= num_vars_)
            throw InputError("formula: variable " + std::to_string(vars[i] + 1) + " out of range");
        for (std::size_t j = i + 1; j < k; ++j)
            if (vars[i] == vars[j])
                throw InputError("formula: duplicate variable " + std::to_string(vars[i] + 1) +
                                 " in tuple");
    }
    rel_.push_back(relation);
    vars_.insert(vars_.end(), vars.begin(), vars.end());
}

bool Formula::evaluate(const Assignment& a) const {
    if (a.size() != num_vars_) throw InputError("evaluate: assignment length does not match formula");
    const std::size_t k = static_cast<std::size_t>(set_->arity());
    for (std::size_t app = 0; app < rel_.size(); ++app) {
        const std::uint32_t* v = vars_.data() + app * k;
        std::uint32_t row = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (a.get(v[i])) row |= 1u << i;
        if (!(*set_)[rel_[app]].allows(row)) return false;
    }
    return true;
}

bool Formula::structurally_equal(const Formula& o) const {
    if (num_vars_ != o.num_vars_ || rel_.size() != o.rel_.size()) return false;
    if (vars_ != o.vars_) return false;
    for (std::size_t app = 0; app < rel_.size(); ++app)
        if (!(*set_)[rel_[app]].same_table((*o.set_)[o.rel_[app]])) return false;
    return true;
}

} // namespace gbcsp
