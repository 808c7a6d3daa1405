#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gbcsp/formula.hpp"

namespace gbcsp {

// Directed graph on the 2n literals of a width-2 clausal formula:
// node 2v is the positive literal of variable v, node 2v+1 the negative
// (v 0-based). Every clause (a v b) contributes the edges !a -> b and
// !b -> a, so the edge relation is skew-symmetric.
class ImplicationGraph {
public:
    static std::uint32_t pos(std::uint32_t v) { return 2 * v; }
    static std::uint32_t neg(std::uint32_t v) { return 2 * v + 1; }
    static std::uint32_t complement(std::uint32_t node) { return node ^ 1u; }
    static std::uint32_t var_of(std::uint32_t node) { return node >> 1; }
    static bool is_positive(std::uint32_t node) { return (node & 1u) == 0; }

    explicit ImplicationGraph(const Formula& phi); // requires width-2 ORs
    ImplicationGraph(std::uint32_t num_vars,
                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& clauses);

    std::uint32_t num_vars() const { return n_; }
    std::uint32_t num_nodes() const { return 2 * n_; }
    std::size_t num_edges() const { return edges_; }
    const std::vector<std::uint32_t>& successors(std::uint32_t node) const { return adj_[node]; }

private:
    void add_clause(std::uint32_t lit_a, std::uint32_t lit_b);

    std::uint32_t n_;
    std::size_t edges_ = 0;
    std::vector<std::vector<std::uint32_t>> adj_;
};

// Strongly connected components plus the condensation. Component ids follow
// Tarjan completion order, so every condensation edge points to a smaller id
// (ids descend along topological order).
struct SccInfo {
    std::uint32_t num_components = 0;
    std::vector<std::uint32_t> component;               // per node
    std::vector<std::vector<std::uint32_t>> members;    // per component, ascending node ids
    std::vector<std::vector<std::uint32_t>> condensation; // deduped successor lists
    std::vector<std::uint32_t> complement_component;    // component of the negated literals
    std::vector<std::uint32_t> weight;                  // literal nodes per component
    bool satisfiable = false;                           // no variable shares a component with its negation
};

SccInfo scc_analysis(const ImplicationGraph& g);

// Structure flags for the nontrivial components (the contracted cycles).
struct CycleReport {
    std::uint64_t nontrivial_components = 0;
    bool all_simple_cycles = true;        // each nontrivial SCC is one directed cycle
    bool path_connected_pair = false;     // some nontrivial SCC reaches another
    std::uint64_t total_cycle_length = 0; // nodes across nontrivial SCCs
    bool literal_implying_two_cycles = false;
};

CycleReport cycle_diagnostics(const ImplicationGraph& g, const SccInfo& info);

// Literals x with x ->* y and x ->* y-bar for some y; equivalently
// x ->* x-bar. Such literals are false in every satisfying assignment.
struct BadLiteralSet {
    std::vector<std::uint32_t> nodes; // sorted literal node ids
    std::vector<char> is_bad;         // indexed by node
    double fraction = 0.0;            // |nodes| / 2n
};

BadLiteralSet bad_literals(const ImplicationGraph& g);

// One step toward B: from an implication-minimal differing variable, flip
// the implication closure. The result C satisfies phi and is strictly
// closer to B in Hamming distance.
Assignment adjacent_step(const Formula& phi, const Assignment& a, const Assignment& b);

struct PathResult {
    std::vector<Assignment> steps; // first = a; last = b when completed
    std::size_t max_step_flips = 0;
    bool completed = false;
};

// Iterated adjacent_step; the strict distance decrease bounds the number of
// steps by hamming(a, b).
PathResult path_between(const Formula& phi, const Assignment& a, const Assignment& b,
                        std::size_t step_budget);

enum class PairStatus { Success, FailOverlappingCycles, FailBandUnreachable, FailUnsat };

const char* to_string(PairStatus status);

struct OverlapPairResult {
    PairStatus status = PairStatus::FailUnsat;
    std::optional<Assignment> a, b;
    std::uint64_t agreement = 0;
    CycleReport cycles;
    double bad_literal_fraction = 0.0;
};

// Direct construction of two satisfying assignments of overlap ~ q for a
// width-2 clausal formula: fix bad literals false, split the remaining
// condensation into a one-literal-per-variable set S, set S true for the
// first assignment, then stage-wise flip lowest-stage S nodes until the
// flipped count reaches the band. flip_literal_reading targets q*n FALSE
// variables (overlap ~ 1-q) instead of overlap ~ q.
OverlapPairResult construct_overlap_pair(const Formula& phi, const Rational& q,
                                         const OverlapBand& band = OverlapBand::inverse_sqrt(),
                                         bool flip_literal_reading = false,
                                         bool strict_distinct = false);

} // namespace gbcsp
