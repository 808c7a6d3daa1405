#pragma once

#include <cstdint>

#include "gbcsp/formula.hpp"

namespace gbcsp {

// xoshiro256** seeded through splitmix64. Bounded sampling is written out
// (rejection, no std distributions) so every stream is reproducible
// independent of the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();
    std::uint64_t below(std::uint64_t bound);               // uniform in [0, bound)
    unsigned __int128 below128(unsigned __int128 bound);
    double unit();                                          // [0, 1), 53 bits
    bool coin() { return next() >> 63; }

private:
    std::uint64_t s_[4];
};

// Stream derivation for (master seed, index) pairs; trial-level parallelism
// cannot change results because each draw owns its derived stream.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

struct GenSpec {
    enum class Model { ConstantProbability, Counting, Multiset };

    Model model = Model::Counting;
    double p = 0.0;        // ConstantProbability
    std::uint64_t m = 0;   // Counting / Multiset
    std::uint32_t n = 0;
    ConstraintSetPtr set;
    std::uint64_t seed = 0;
    // Drop applications equal as constraints to an earlier one (clauses
    // compare as literal sets). Off by default: ordered tuples stay distinct
    // even for symmetric relations.
    bool dedupe_symmetric = false;
};

Formula generate(const GenSpec& spec);

// Counting model with m = round(density * n).
Formula generate_density(ConstraintSetPtr set, std::uint32_t n, double density, std::uint64_t seed);

// Number of ordered k-tuples of distinct variables: n(n-1)...(n-k+1).
// Throws TooLargeError when the (tuple, relation) index space overflows.
unsigned __int128 ordered_tuple_count(std::uint64_t n, int k);

// p * |set| * n(n-1)...(n-k+1)
double expected_constraint_count(const ConstraintSet& set, std::uint64_t n, double p);

// p with expected_constraint_count(set, n, p) == density * n; errors if > 1.
double density_to_p(const ConstraintSet& set, std::uint64_t n, double density);

} // namespace gbcsp
