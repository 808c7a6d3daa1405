#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gbcsp/formula.hpp"

namespace gbcsp {

inline constexpr std::uint32_t kEnumerationMaxVars = 30;

// All satisfying assignments of a formula, encoded as integers with
// variable 1 in the least significant bit.
struct SolutionSet {
    std::uint32_t n = 0;
    std::vector<std::uint64_t> solutions; // sorted, distinct
    bool complete = false;                // produced by exhaustive enumeration
};

// Exhaustive enumeration, blockwise over 64 assignments at a time with
// per-constraint precomputed masks. Refuses n > 30 (use solve_one there).
SolutionSet enumerate_solutions(const Formula& phi, int workers = 1);

// Connected components of the solution graph with edges between pairs at
// Hamming distance <= f.
struct ClusterReport {
    std::uint64_t adjacency_threshold = 0;
    std::vector<std::uint32_t> cluster_of; // per solution index
    std::vector<std::uint64_t> cluster_sizes;
    std::size_t num_clusters = 0;
    std::optional<std::uint64_t> min_cross_distance; // absent with < 2 clusters
};

ClusterReport clusters(const SolutionSet& sols, std::uint64_t f);

// ceil(log2(n)^2): grows faster than log n, stays o(n).
std::uint64_t default_adjacency_threshold(std::uint32_t n);

// Counts of unordered distinct solution pairs by agreement count, with a
// within/cross-cluster split when a report is supplied.
struct OverlapHistogram {
    std::uint32_t n = 0;
    std::vector<std::uint64_t> pairs; // index = agreement count, 0..n
    bool has_split = false;
    std::vector<std::uint64_t> within_cluster;
    std::vector<std::uint64_t> cross_cluster;

    std::uint64_t total() const;
};

OverlapHistogram overlap_histogram(const SolutionSet& sols, const ClusterReport* report = nullptr);

struct QOverlapWitness {
    Assignment a, b;
    std::uint64_t agreement = 0;
};

struct QOverlapResult {
    bool satisfied = false;
    std::optional<QOverlapWitness> witness;
};

// Exact decision via enumeration: two satisfying assignments (not required
// distinct unless strict_distinct) whose overlap lies in the band around q.
QOverlapResult decide_q_overlap(const Formula& phi, const Rational& q,
                                const OverlapBand& band = OverlapBand::inverse_sqrt(),
                                bool strict_distinct = false);

} // namespace gbcsp
