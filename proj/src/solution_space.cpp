#include "gbcsp/solution_space.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

namespace gbcsp {

namespace {

// Lane patterns for the six variables that vary inside a 64-assignment block.
constexpr std::uint64_t kLanePattern[6] = {
    0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL, 0xf0f0f0f0f0f0f0f0ULL,
    0xff00ff00ff00ff00ULL, 0xffff0000ffff0000ULL, 0xffffffff00000000ULL,
};

struct BlockConstraint {
    const std::uint32_t* vars;
    int arity;
    // row patterns to OR together; complemented when the falsifying side is
    // smaller than the satisfying side
    std::vector<std::uint32_t> patterns;
    bool complement;
};

std::uint64_t eval_block(const BlockConstraint& c, std::uint64_t base) {
    std::uint64_t var_word[kMaxArity];
    for (int i = 0; i < c.arity; ++i) {
        std::uint32_t v = c.vars[i];
        var_word[i] = v < 6 ? kLanePattern[v] : ((base >> v) & 1u ? ~std::uint64_t{0} : 0);
    }
    std::uint64_t acc = 0;
    for (std::uint32_t row : c.patterns) {
        std::uint64_t match = ~std::uint64_t{0};
        for (int i = 0; i < c.arity; ++i)
            match &= (row >> i) & 1u ? var_word[i] : ~var_word[i];
        acc |= match;
        if (acc == ~std::uint64_t{0}) break;
    }
    return c.complement ? ~acc : acc;
}

std::vector<BlockConstraint> compile_blocks(const Formula& phi) {
    const ConstraintSet& set = phi.constraint_set();
    std::vector<BlockConstraint> out;
    out.reserve(phi.num_applications());
    for (std::size_t app = 0; app < phi.num_applications(); ++app) {
        const Relation& r = set[phi.relation_of(app)];
        BlockConstraint c;
        c.vars = phi.vars_of(app).data();
        c.arity = r.arity();
        std::size_t table = r.table_size();
        if (r.rows().size() * 2 > table) {
            c.complement = true;
            for (std::uint32_t row = 0; row < table; ++row)
                if (!r.allows(row)) c.patterns.push_back(row);
        } else {
            c.complement = false;
            c.patterns = r.rows();
        }
        out.push_back(std::move(c));
    }
    return out;
}

void enumerate_range(const std::vector<BlockConstraint>& cs, std::uint64_t first_block,
                     std::uint64_t last_block, std::uint64_t lane_mask,
                     std::vector<std::uint64_t>& out) {
    for (std::uint64_t block = first_block; block < last_block; ++block) {
        std::uint64_t base = block << 6;
        std::uint64_t lanes = lane_mask;
        for (const BlockConstraint& c : cs) {
            lanes &= eval_block(c, base);
            if (lanes == 0) break;
        }
        while (lanes != 0) {
            int bit = std::countr_zero(lanes);
            out.push_back(base | static_cast<std::uint64_t>(bit));
            lanes &= lanes - 1;
        }
    }
}

} // namespace

SolutionSet enumerate_solutions(const Formula& phi, int workers) {
    const std::uint32_t n = phi.num_vars();
    if (n > kEnumerationMaxVars)
        throw TooLargeError("enumeration is limited to " + std::to_string(kEnumerationMaxVars) +
                            " variables; use solve_one for single solutions at this size");
    if (workers < 1) throw InputError("enumerate: worker count must be positive");

    auto cs = compile_blocks(phi);
    std::uint64_t lane_mask = n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1u << n)) - 1;
    std::uint64_t num_blocks = n >= 6 ? std::uint64_t{1} << (n - 6) : 1;

    SolutionSet result;
    result.n = n;
    result.complete = true;

    std::uint64_t w = std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), num_blocks);
    if (w <= 1) {
        enumerate_range(cs, 0, num_blocks, lane_mask, result.solutions);
        return result;
    }
    std::vector<std::vector<std::uint64_t>> chunks(w);
    std::vector<std::thread> threads;
    for (std::uint64_t i = 0; i < w; ++i) {
        std::uint64_t lo = num_blocks * i / w;
        std::uint64_t hi = num_blocks * (i + 1) / w;
        threads.emplace_back(
            [&, lo, hi, i] { enumerate_range(cs, lo, hi, lane_mask, chunks[i]); });
    }
    for (auto& t : threads) t.join();
    // ranges ascend, so concatenation stays sorted
    for (auto& chunk : chunks)
        result.solutions.insert(result.solutions.end(), chunk.begin(), chunk.end());
    return result;
}

std::uint64_t default_adjacency_threshold(std::uint32_t n) {
    if (n < 2) return 1;
    double lg = std::log2(static_cast<double>(n));
    return static_cast<std::uint64_t>(std::ceil(lg * lg));
}

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

} // namespace

ClusterReport clusters(const SolutionSet& sols, std::uint64_t f) {
    if (!sols.complete) throw InputError("clusters: solution set is not complete");
    if (f < 1) throw InputError("clusters: adjacency threshold must be at least 1");

    const std::size_t s = sols.solutions.size();
    ClusterReport report;
    report.adjacency_threshold = f;

    UnionFind uf(s);
    std::uint64_t min_cross = ~std::uint64_t{0};
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = i + 1; j < s; ++j) {
            auto d = static_cast<std::uint64_t>(
                std::popcount(sols.solutions[i] ^ sols.solutions[j]));
            if (d <= f) uf.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        }
    }
    // densify cluster ids in first-appearance order
    std::vector<std::uint32_t> id_of_root(s, ~std::uint32_t{0});
    report.cluster_of.resize(s);
    for (std::size_t i = 0; i < s; ++i) {
        std::uint32_t root = uf.find(static_cast<std::uint32_t>(i));
        if (id_of_root[root] == ~std::uint32_t{0}) {
            id_of_root[root] = static_cast<std::uint32_t>(report.cluster_sizes.size());
            report.cluster_sizes.push_back(0);
        }
        report.cluster_of[i] = id_of_root[root];
        ++report.cluster_sizes[id_of_root[root]];
    }
    report.num_clusters = report.cluster_sizes.size();
    if (report.num_clusters >= 2) {
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = i + 1; j < s; ++j)
                if (report.cluster_of[i] != report.cluster_of[j])
                    min_cross = std::min(min_cross,
                                         static_cast<std::uint64_t>(std::popcount(
                                             sols.solutions[i] ^ sols.solutions[j])));
        report.min_cross_distance = min_cross;
    }
    return report;
}

std::uint64_t OverlapHistogram::total() const {
    std::uint64_t t = 0;
    for (std::uint64_t p : pairs) t += p;
    return t;
}

OverlapHistogram overlap_histogram(const SolutionSet& sols, const ClusterReport* report) {
    if (!sols.complete) throw InputError("overlap_histogram: solution set is not complete");
    if (report && report->cluster_of.size() != sols.solutions.size())
        throw InputError("overlap_histogram: cluster report does not match solution set");

    OverlapHistogram hist;
    hist.n = sols.n;
    hist.pairs.assign(sols.n + 1, 0);
    hist.has_split = report != nullptr;
    if (report) {
        hist.within_cluster.assign(sols.n + 1, 0);
        hist.cross_cluster.assign(sols.n + 1, 0);
    }
    const std::size_t s = sols.solutions.size();
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = i + 1; j < s; ++j) {
            std::uint32_t agree = sols.n - static_cast<std::uint32_t>(
                                               std::popcount(sols.solutions[i] ^ sols.solutions[j]));
            ++hist.pairs[agree];
            if (report) {
                if (report->cluster_of[i] == report->cluster_of[j])
                    ++hist.within_cluster[agree];
                else
                    ++hist.cross_cluster[agree];
            }
        }
    }
    return hist;
}

QOverlapResult decide_q_overlap(const Formula& phi, const Rational& q, const OverlapBand& band,
                                bool strict_distinct) {
    if (q < Rational(0) || q > Rational(1)) throw InputError("decide_q_overlap: q outside [0,1]");
    SolutionSet sols = enumerate_solutions(phi);
    const std::uint32_t n = sols.n;
    const std::size_t s = sols.solutions.size();

    // precompute which agreement counts fall inside the band
    std::vector<char> agree_ok(n + 1, 0);
    for (std::uint32_t a = 0; a <= n; ++a)
        agree_ok[a] = band.contains(Rational(a, n), q, n) ? 1 : 0;

    QOverlapResult result;
    if (!strict_distinct && agree_ok[n]) {
        // identity pairs have overlap 1
        if (s > 0) {
            result.satisfied = true;
            Assignment a = Assignment::from_integer(sols.solutions.front(), n);
            result.witness = QOverlapWitness{a, a, n};
            return result;
        }
    }
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = i + 1; j < s; ++j) {
            std::uint32_t agree =
                n - static_cast<std::uint32_t>(std::popcount(sols.solutions[i] ^ sols.solutions[j]));
            if (agree_ok[agree]) {
                result.satisfied = true;
                result.witness = QOverlapWitness{Assignment::from_integer(sols.solutions[i], n),
                                                 Assignment::from_integer(sols.solutions[j], n), agree};
                return result;
            }
        }
    }
    return result;
}

} // namespace gbcsp
