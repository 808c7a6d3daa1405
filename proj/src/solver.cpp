#include "gbcsp/solver.hpp"

#include <algorithm>
#include <map>

#include "gbcsp/random_gen.hpp"
#include "gbcsp/twosat.hpp"

namespace gbcsp {

std::optional<Formula> to_clausal_binary(const Formula& phi) {
    const ConstraintSet& set = phi.constraint_set();
    if (set.arity() != 2) return std::nullopt;

    // clause relations by falsifying row, created on demand
    std::vector<Relation> rels;
    std::map<std::uint32_t, std::uint32_t> rel_of_row;
    for (std::uint32_t fr = 0; fr < 4; ++fr) {
        rel_of_row[fr] = static_cast<std::uint32_t>(rels.size());
        rels.push_back(Relation::or_clause(2, fr));
    }
    auto clause_set = std::make_shared<const ConstraintSet>(std::move(rels));

    Formula out(phi.num_vars(), clause_set);
    for (std::size_t app = 0; app < phi.num_applications(); ++app) {
        const Relation& r = set[phi.relation_of(app)];
        auto vars = phi.vars_of(app);
        for (std::uint32_t row = 0; row < 4; ++row)
            if (!r.allows(row)) out.add(rel_of_row[row], vars);
    }
    return out;
}

namespace {

// 2-SAT route: apply a seeded polarity renaming, take the canonical
// component-order solution, rename back. Different seeds sample different
// solutions of the same formula.
std::optional<Assignment> solve_twosat(const Formula& clausal, const Formula& original,
                                       std::uint64_t polarity_seed) {
    const std::uint32_t n = clausal.num_vars();
    Rng rng(mix_seed(polarity_seed, 0x706f6cULL));
    std::vector<char> flip(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) flip[v] = rng.coin() ? 1 : 0;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> clauses;
    clauses.reserve(clausal.num_applications());
    const ConstraintSet& set = clausal.constraint_set();
    for (std::size_t app = 0; app < clausal.num_applications(); ++app) {
        std::uint32_t fr = set[clausal.relation_of(app)].falsifying_row();
        auto vars = clausal.vars_of(app);
        std::uint32_t lit_a = 2 * vars[0] + ((fr & 1u) ^ flip[vars[0]]);
        std::uint32_t lit_b = 2 * vars[1] + (((fr >> 1) & 1u) ^ flip[vars[1]]);
        clauses.emplace_back(lit_a, lit_b);
    }
    ImplicationGraph g(n, clauses);
    SccInfo info = scc_analysis(g);
    if (!info.satisfiable) return std::nullopt;

    Assignment a(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        bool value = info.component[ImplicationGraph::pos(v)] <
                     info.component[ImplicationGraph::neg(v)];
        a.set(v, value != static_cast<bool>(flip[v]));
    }
    if (!original.evaluate(a))
        throw std::logic_error("twosat solver produced a non-satisfying assignment");
    return a;
}

// Complete backtracking search with per-application propagation.
class BacktrackSolver {
public:
    BacktrackSolver(const Formula& phi, std::uint64_t seed)
        : phi_(phi), k_(phi.constraint_set().arity()), values_(phi.num_vars(), -1),
          occurrences_(phi.num_vars()) {
        for (std::size_t app = 0; app < phi.num_applications(); ++app)
            for (std::uint32_t v : phi.vars_of(app)) occurrences_[v].push_back(app);
        Rng rng(mix_seed(seed, 0x64706c6cULL));
        order_.resize(phi.num_vars());
        for (std::uint32_t v = 0; v < phi.num_vars(); ++v) order_[v] = v;
        for (std::uint32_t i = phi.num_vars(); i > 1; --i)
            std::swap(order_[i - 1], order_[rng.below(i)]);
        polarity_.resize(phi.num_vars());
        for (std::uint32_t v = 0; v < phi.num_vars(); ++v) polarity_[v] = rng.coin() ? 1 : 0;
    }

    std::optional<Assignment> run() {
        if (!search(0)) return std::nullopt;
        Assignment a(phi_.num_vars());
        for (std::uint32_t v = 0; v < phi_.num_vars(); ++v) a.set(v, values_[v] == 1);
        if (!phi_.evaluate(a)) throw std::logic_error("backtracking solver certificate failed");
        return a;
    }

private:
    bool assign(std::uint32_t var, int value, std::vector<std::uint32_t>& trail) {
        values_[var] = value;
        trail.push_back(var);
        pending_.insert(pending_.end(), occurrences_[var].begin(), occurrences_[var].end());
        return true;
    }

    // returns false on conflict; forced assignments extend the trail
    bool propagate(std::vector<std::uint32_t>& trail) {
        while (!pending_.empty()) {
            std::size_t app = pending_.back();
            pending_.pop_back();
            const Relation& r = phi_.constraint_set()[phi_.relation_of(app)];
            auto vars = phi_.vars_of(app);

            std::uint32_t assigned_mask = 0, assigned_row = 0;
            for (int i = 0; i < k_; ++i) {
                if (values_[vars[i]] >= 0) {
                    assigned_mask |= 1u << i;
                    if (values_[vars[i]] == 1) assigned_row |= 1u << i;
                }
            }
            std::uint32_t support0 = 0, support1 = 0; // per-position value support
            bool any = false;
            for (std::uint32_t row : r.rows()) {
                if ((row & assigned_mask) != assigned_row) continue;
                any = true;
                support1 |= row;
                support0 |= ~row;
            }
            if (!any) return false;
            for (int i = 0; i < k_; ++i) {
                if (assigned_mask & (1u << i)) continue;
                bool can0 = (support0 >> i) & 1u, can1 = (support1 >> i) & 1u;
                if (!can0 && !can1) return false;
                if (can0 != can1) assign(vars[i], can1 ? 1 : 0, trail);
            }
        }
        return true;
    }

    bool search(std::size_t order_pos) {
        while (order_pos < order_.size() && values_[order_[order_pos]] >= 0) ++order_pos;
        if (order_pos == order_.size()) return true;
        std::uint32_t var = order_[order_pos];
        for (int attempt = 0; attempt < 2; ++attempt) {
            int value = static_cast<int>(polarity_[var]) ^ attempt;
            std::vector<std::uint32_t> trail;
            assign(var, value, trail);
            if (propagate(trail) && search(order_pos + 1)) return true;
            pending_.clear();
            for (std::uint32_t v : trail) values_[v] = -1;
        }
        return false;
    }

    const Formula& phi_;
    int k_;
    std::vector<int> values_;
    std::vector<std::vector<std::size_t>> occurrences_;
    std::vector<std::size_t> pending_;
    std::vector<std::uint32_t> order_;
    std::vector<char> polarity_;
};

} // namespace

std::optional<Assignment> solve_one(const Formula& phi, std::uint64_t polarity_seed) {
    if (auto clausal = to_clausal_binary(phi)) return solve_twosat(*clausal, phi, polarity_seed);
    return BacktrackSolver(phi, polarity_seed).run();
}

} // namespace gbcsp
