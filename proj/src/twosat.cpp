#include "gbcsp/twosat.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace gbcsp {

namespace {

void check_internal(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("twosat internal invariant violated: ") + what);
}

} // namespace

ImplicationGraph::ImplicationGraph(const Formula& phi) : n_(phi.num_vars()), adj_(2 * phi.num_vars()) {
    const ConstraintSet& set = phi.constraint_set();
    if (set.arity() != 2) throw InputError("implication graph: relations must have arity 2");
    for (const Relation& r : set.relations())
        if (!r.is_clause())
            throw InputError("implication graph: relation '" + r.name() + "' is not an OR of literals");
    for (std::size_t app = 0; app < phi.num_applications(); ++app) {
        std::uint32_t fr = set[phi.relation_of(app)].falsifying_row();
        auto vars = phi.vars_of(app);
        std::uint32_t lit_a = 2 * vars[0] + (fr & 1u);
        std::uint32_t lit_b = 2 * vars[1] + ((fr >> 1) & 1u);
        add_clause(lit_a, lit_b);
    }
}

ImplicationGraph::ImplicationGraph(std::uint32_t num_vars,
                                   const std::vector<std::pair<std::uint32_t, std::uint32_t>>& clauses)
    : n_(num_vars), adj_(2 * num_vars) {
    for (const auto& [a, b] : clauses) {
        if (a >= 2 * n_ || b >= 2 * n_) throw InputError("implication graph: literal out of range");
        add_clause(a, b);
    }
}

void ImplicationGraph::add_clause(std::uint32_t lit_a, std::uint32_t lit_b) {
    adj_[complement(lit_a)].push_back(lit_b);
    adj_[complement(lit_b)].push_back(lit_a);
    edges_ += 2;
}

SccInfo scc_analysis(const ImplicationGraph& g) {
    const std::uint32_t num_nodes = g.num_nodes();
    constexpr std::uint32_t kUnvisited = ~std::uint32_t{0};

    SccInfo info;
    info.component.assign(num_nodes, kUnvisited);

    std::vector<std::uint32_t> index(num_nodes, kUnvisited), low(num_nodes);
    std::vector<std::uint32_t> stack;
    std::vector<char> on_stack(num_nodes, 0);
    std::uint32_t counter = 0;

    struct Frame {
        std::uint32_t node;
        std::uint32_t child;
    };
    std::vector<Frame> frames;

    for (std::uint32_t root = 0; root < num_nodes; ++root) {
        if (index[root] != kUnvisited) continue;
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        frames.push_back({root, 0});
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& succ = g.successors(f.node);
            if (f.child < succ.size()) {
                std::uint32_t w = succ[f.child++];
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
            } else {
                std::uint32_t v = f.node;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[v]);
                if (low[v] == index[v]) {
                    std::uint32_t comp = info.num_components++;
                    while (true) {
                        std::uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        info.component[w] = comp;
                        if (w == v) break;
                    }
                }
            }
        }
    }

    info.members.resize(info.num_components);
    for (std::uint32_t node = 0; node < num_nodes; ++node) info.members[info.component[node]].push_back(node);
    info.weight.resize(info.num_components);
    for (std::uint32_t c = 0; c < info.num_components; ++c)
        info.weight[c] = static_cast<std::uint32_t>(info.members[c].size());

    // deduped condensation (edges always point to a smaller component id)
    info.condensation.resize(info.num_components);
    std::vector<std::uint32_t> last_seen(info.num_components, kUnvisited);
    for (std::uint32_t node = 0; node < num_nodes; ++node) {
        std::uint32_t cu = info.component[node];
        for (std::uint32_t w : g.successors(node)) {
            std::uint32_t cw = info.component[w];
            if (cu == cw || last_seen[cw] == cu) continue;
            last_seen[cw] = cu;
            info.condensation[cu].push_back(cw);
        }
    }

    info.complement_component.resize(info.num_components);
    for (std::uint32_t c = 0; c < info.num_components; ++c)
        info.complement_component[c] = info.component[ImplicationGraph::complement(info.members[c][0])];

    info.satisfiable = true;
    for (std::uint32_t v = 0; v < g.num_vars(); ++v) {
        if (info.component[ImplicationGraph::pos(v)] == info.component[ImplicationGraph::neg(v)]) {
            info.satisfiable = false;
            break;
        }
    }
    return info;
}

CycleReport cycle_diagnostics(const ImplicationGraph& g, const SccInfo& info) {
    CycleReport report;
    std::vector<char> nontrivial(info.num_components, 0);
    for (std::uint32_t c = 0; c < info.num_components; ++c) {
        if (info.weight[c] >= 2) {
            nontrivial[c] = 1;
            ++report.nontrivial_components;
            report.total_cycle_length += info.weight[c];
        }
    }

    // simple cycle: every node has exactly one distinct successor inside the
    // component (with strong connectivity that forces a single cycle)
    std::vector<std::uint32_t> inside;
    for (std::uint32_t c = 0; c < info.num_components && report.all_simple_cycles; ++c) {
        if (!nontrivial[c]) continue;
        for (std::uint32_t node : info.members[c]) {
            inside.clear();
            for (std::uint32_t w : g.successors(node))
                if (info.component[w] == c) inside.push_back(w);
            std::sort(inside.begin(), inside.end());
            inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
            if (inside.size() != 1) {
                report.all_simple_cycles = false;
                break;
            }
        }
    }

    // reachability over the condensation; ids descend along edges, so a
    // pass in ascending id order sees successors first
    std::vector<char> reaches_nontrivial(info.num_components, 0);
    enum : std::uint32_t { kNone = ~std::uint32_t{0}, kMany = kNone - 1 };
    std::vector<std::uint32_t> reachable_cycle(info.num_components, kNone); // one id, or kMany
    for (std::uint32_t c = 0; c < info.num_components; ++c) {
        std::uint32_t mine = nontrivial[c] ? c : kNone;
        for (std::uint32_t s : info.condensation[c]) {
            if (nontrivial[s] || reaches_nontrivial[s]) reaches_nontrivial[c] = 1;
            std::uint32_t theirs = reachable_cycle[s];
            if (theirs == kNone) continue;
            if (mine == kNone)
                mine = theirs;
            else if (mine != theirs)
                mine = kMany;
        }
        if (nontrivial[c] && reaches_nontrivial[c]) report.path_connected_pair = true;
        reachable_cycle[c] = mine;
        if (mine == kMany) report.literal_implying_two_cycles = true;
    }
    return report;
}

BadLiteralSet bad_literals(const ImplicationGraph& g) {
    const std::uint32_t num_nodes = g.num_nodes();
    BadLiteralSet bad;
    bad.is_bad.assign(num_nodes, 0);

    std::vector<std::uint32_t> stamp(num_nodes, ~std::uint32_t{0});
    std::vector<std::uint32_t> queue;
    for (std::uint32_t start = 0; start < num_nodes; ++start) {
        queue.clear();
        queue.push_back(start);
        stamp[start] = start;
        bool is_bad = false;
        for (std::size_t head = 0; head < queue.size() && !is_bad; ++head) {
            for (std::uint32_t w : g.successors(queue[head])) {
                if (stamp[w] == start) continue;
                if (stamp[ImplicationGraph::complement(w)] == start) {
                    is_bad = true;
                    break;
                }
                stamp[w] = start;
                queue.push_back(w);
            }
        }
        if (is_bad) {
            bad.is_bad[start] = 1;
            bad.nodes.push_back(start);
        }
    }
    bad.fraction = num_nodes == 0 ? 0.0 : static_cast<double>(bad.nodes.size()) / num_nodes;
    return bad;
}

namespace {

// The literal that is false under A and true under B for a differing
// variable; flipping its forward closure to TRUE is one step of the walk.
std::uint32_t source_literal(const Assignment& a, std::uint32_t var) {
    return a.get(var) ? ImplicationGraph::neg(var) : ImplicationGraph::pos(var);
}

Assignment adjacent_step_impl(const Formula& phi, const ImplicationGraph& g, const SccInfo& info,
                              const Assignment& a, const Assignment& b) {
    const std::uint32_t n = phi.num_vars();
    std::vector<std::uint32_t> differing;
    for (std::uint32_t v = 0; v < n; ++v)
        if (a.get(v) != b.get(v)) differing.push_back(v);
    if (differing.empty()) throw InputError("adjacent_step: assignments are equal");

    // implication-minimal differing variable: no other differing variable's
    // source literal strictly reaches this one's (component-level)
    std::vector<std::uint32_t> cand_comp(differing.size());
    for (std::size_t i = 0; i < differing.size(); ++i)
        cand_comp[i] = info.component[source_literal(a, differing[i])];

    std::vector<char> is_candidate_comp(info.num_components, 0);
    std::vector<std::uint32_t> distinct_comps;
    for (std::uint32_t c : cand_comp) {
        if (!is_candidate_comp[c]) {
            is_candidate_comp[c] = 1;
            distinct_comps.push_back(c);
        }
    }

    // a candidate component is dominated when a different candidate
    // component reaches it in the condensation
    std::vector<char> dominated(info.num_components, 0);
    {
        constexpr std::uint32_t kNoMark = ~std::uint32_t{0};
        std::vector<std::uint32_t> mark(info.num_components, kNoMark);
        std::vector<std::uint32_t> stack;
        for (std::uint32_t start : distinct_comps) {
            stack.assign(1, start);
            mark[start] = start;
            while (!stack.empty()) {
                std::uint32_t c = stack.back();
                stack.pop_back();
                for (std::uint32_t s : info.condensation[c]) {
                    if (mark[s] == start) continue;
                    mark[s] = start;
                    if (is_candidate_comp[s]) dominated[s] = 1; // s != start in a DAG
                    stack.push_back(s);
                }
            }
        }
    }

    std::uint32_t chosen = ~std::uint32_t{0};
    for (std::size_t i = 0; i < differing.size(); ++i) {
        if (!dominated[cand_comp[i]]) {
            chosen = differing[i];
            break;
        }
    }
    check_internal(chosen != ~std::uint32_t{0}, "no implication-minimal differing variable");

    // flip the forward closure of the source literal to TRUE
    Assignment c = a;
    std::vector<char> visited(g.num_nodes(), 0);
    std::vector<std::uint32_t> queue{source_literal(a, chosen)};
    visited[queue[0]] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::uint32_t node = queue[head];
        c.set(ImplicationGraph::var_of(node), ImplicationGraph::is_positive(node));
        for (std::uint32_t w : g.successors(node)) {
            if (!visited[w]) {
                visited[w] = 1;
                queue.push_back(w);
            }
        }
    }

    check_internal(c.hamming(b) < a.hamming(b), "step did not move toward the target");
    check_internal(phi.evaluate(c), "step left the solution set");
    return c;
}

} // namespace

Assignment adjacent_step(const Formula& phi, const Assignment& a, const Assignment& b) {
    if (a.size() != phi.num_vars() || b.size() != phi.num_vars())
        throw InputError("adjacent_step: assignment length does not match formula");
    if (a == b) throw InputError("adjacent_step: assignments are equal");
    if (!phi.evaluate(a) || !phi.evaluate(b))
        throw InputError("adjacent_step: both assignments must satisfy the formula");
    ImplicationGraph g(phi);
    SccInfo info = scc_analysis(g);
    return adjacent_step_impl(phi, g, info, a, b);
}

PathResult path_between(const Formula& phi, const Assignment& a, const Assignment& b,
                        std::size_t step_budget) {
    if (a.size() != phi.num_vars() || b.size() != phi.num_vars())
        throw InputError("path_between: assignment length does not match formula");
    if (!phi.evaluate(a) || !phi.evaluate(b))
        throw InputError("path_between: both assignments must satisfy the formula");

    PathResult result;
    result.steps.push_back(a);
    if (a == b) {
        result.completed = true;
        return result;
    }
    ImplicationGraph g(phi);
    SccInfo info = scc_analysis(g);
    Assignment current = a;
    while (current != b) {
        if (result.steps.size() > step_budget) return result; // budget exhausted, incomplete
        Assignment next = adjacent_step_impl(phi, g, info, current, b);
        result.max_step_flips = std::max(result.max_step_flips, current.hamming(next));
        result.steps.push_back(next);
        current = std::move(next);
    }
    result.completed = true;
    return result;
}

const char* to_string(PairStatus status) {
    switch (status) {
        case PairStatus::Success: return "Success";
        case PairStatus::FailOverlappingCycles: return "FailOverlappingCycles";
        case PairStatus::FailBandUnreachable: return "FailBandUnreachable";
        case PairStatus::FailUnsat: return "FailUnsat";
    }
    return "?";
}

OverlapPairResult construct_overlap_pair(const Formula& phi, const Rational& q,
                                         const OverlapBand& band, bool flip_literal_reading,
                                         bool strict_distinct) {
    if (q <= Rational(0) || q > Rational(1))
        throw InputError("construct_overlap_pair: q must be in (0, 1]");

    const std::uint32_t n = phi.num_vars();
    ImplicationGraph g(phi);
    SccInfo info = scc_analysis(g);

    OverlapPairResult result;
    result.cycles = cycle_diagnostics(g, info);
    BadLiteralSet bad = bad_literals(g);
    result.bad_literal_fraction = bad.fraction;

    if (!info.satisfiable) {
        result.status = PairStatus::FailUnsat;
        return result;
    }
    if (!result.cycles.all_simple_cycles) {
        result.status = PairStatus::FailOverlappingCycles;
        return result;
    }

    const std::uint32_t num_comps = info.num_components;
    // a bad literal's whole component is bad; remove bad components and
    // their complements before building S
    std::vector<char> removed(num_comps, 0);
    for (std::uint32_t c = 0; c < num_comps; ++c)
        if (bad.is_bad[info.members[c][0]]) {
            removed[c] = 1;
            removed[info.complement_component[c]] = 1;
        }

    Assignment first(n);
    std::vector<char> assigned(n, 0);
    for (std::uint32_t node : bad.nodes) {
        std::uint32_t v = ImplicationGraph::var_of(node);
        first.set(v, !ImplicationGraph::is_positive(node)); // bad literals go FALSE
        check_internal(!assigned[v], "variable fixed twice by bad literals");
        assigned[v] = 1;
    }

    // peel the remaining condensation: indegree-0 components join S, their
    // complements (outdegree 0 by skew symmetry) are eliminated; isolated
    // complement pairs keep the side holding the smallest literal node
    std::vector<std::uint32_t> indeg(num_comps, 0), outdeg(num_comps, 0);
    for (std::uint32_t c = 0; c < num_comps; ++c) {
        if (removed[c]) continue;
        for (std::uint32_t s : info.condensation[c]) {
            if (removed[s]) continue;
            ++outdeg[c];
            ++indeg[s];
        }
    }
    std::vector<std::vector<std::uint32_t>> preds(num_comps);
    for (std::uint32_t c = 0; c < num_comps; ++c) {
        if (removed[c]) continue;
        for (std::uint32_t s : info.condensation[c])
            if (!removed[s]) preds[s].push_back(c);
    }

    std::vector<char> live(num_comps, 0);
    std::vector<std::uint32_t> active;
    for (std::uint32_t c = 0; c < num_comps; ++c)
        if (!removed[c]) {
            live[c] = 1;
            active.push_back(c);
        }

    std::vector<char> in_s(num_comps, 0);
    auto retire = [&](std::uint32_t c) {
        live[c] = 0;
        for (std::uint32_t s : info.condensation[c])
            if (live[s]) --indeg[s];
        for (std::uint32_t p : preds[c])
            if (live[p]) --outdeg[p];
    };

    while (!active.empty()) {
        std::vector<std::uint32_t> sources, sinks, isolated;
        for (std::uint32_t c : active) {
            bool src = indeg[c] == 0, snk = outdeg[c] == 0;
            if (src && snk)
                isolated.push_back(c);
            else if (src)
                sources.push_back(c);
            else if (snk)
                sinks.push_back(c);
        }
        check_internal(!sources.empty() || !isolated.empty(), "no peelable component in a DAG");
        for (std::uint32_t c : isolated) {
            std::uint32_t partner = info.complement_component[c];
            std::uint32_t keeper =
                info.members[c][0] < info.members[partner][0] ? c : partner;
            if (c == keeper) in_s[c] = 1;
        }
        for (std::uint32_t c : sources) in_s[c] = 1;
        for (std::uint32_t c : isolated) retire(c);
        for (std::uint32_t c : sources) retire(c);
        for (std::uint32_t c : sinks) retire(c);
        std::vector<std::uint32_t> next;
        for (std::uint32_t c : active)
            if (live[c]) next.push_back(c);
        active = std::move(next);
    }

    std::vector<std::uint32_t> s_comps;
    for (std::uint32_t c = 0; c < num_comps; ++c) {
        if (!in_s[c]) continue;
        s_comps.push_back(c);
        for (std::uint32_t node : info.members[c]) {
            std::uint32_t v = ImplicationGraph::var_of(node);
            check_internal(!assigned[v], "S holds a variable twice");
            assigned[v] = 1;
            first.set(v, ImplicationGraph::is_positive(node));
        }
    }
    for (std::uint32_t v = 0; v < n; ++v) check_internal(assigned[v], "S misses a variable");
    check_internal(phi.evaluate(first), "first constructed assignment does not satisfy");

    // allowed agreement window and the flip target
    std::int64_t a_min = -1, a_max = -1;
    for (std::uint32_t agree = 0; agree <= n; ++agree) {
        if (band.contains(Rational(agree, n), q, n)) {
            if (a_min < 0) a_min = agree;
            a_max = agree;
        }
    }
    if (a_min < 0) {
        result.status = PairStatus::FailBandUnreachable;
        return result;
    }
    std::int64_t flips_lo, flips_hi, target;
    if (flip_literal_reading) {
        // band read on the FALSE count itself: flips/n lands around q, so the
        // window over flip counts coincides with the allowed-agreement scan
        flips_lo = a_min;
        flips_hi = a_max;
        target = std::llround(q.to_double() * n);
    } else {
        flips_lo = static_cast<std::int64_t>(n) - a_max;
        flips_hi = static_cast<std::int64_t>(n) - a_min;
        target = std::llround((1.0 - q.to_double()) * n);
    }
    if (strict_distinct) flips_lo = std::max<std::int64_t>(flips_lo, 1);
    if (flips_lo > flips_hi) {
        result.status = PairStatus::FailBandUnreachable;
        return result;
    }
    target = std::clamp(target, flips_lo, flips_hi);

    // stage-labelled elimination from S: repeatedly flip the indegree-0
    // S-component with the smallest stage label (ties by lowest node id)
    std::vector<std::uint32_t> indeg_s(num_comps, 0);
    std::vector<char> comp_in_s = in_s;
    for (std::uint32_t c : s_comps)
        for (std::uint32_t s : info.condensation[c])
            if (comp_in_s[s]) ++indeg_s[s];

    using HeapItem = std::pair<std::uint64_t, std::uint32_t>; // (stage, min node id) -> comp
    std::priority_queue<std::pair<HeapItem, std::uint32_t>, std::vector<std::pair<HeapItem, std::uint32_t>>,
                        std::greater<>>
        ready;
    for (std::uint32_t c : s_comps)
        if (indeg_s[c] == 0) ready.push({{0, info.members[c][0]}, c});

    std::int64_t flipped = 0;
    std::uint64_t stage = 0;
    std::vector<std::uint32_t> flipped_comps;
    while (flipped < target && !ready.empty()) {
        auto [key, c] = ready.top();
        std::uint32_t w = info.weight[c];
        if (flipped >= flips_lo && flipped + w > flips_hi) break; // stay inside the band
        ready.pop();
        ++stage;
        flipped += w;
        flipped_comps.push_back(c);
        for (std::uint32_t s : info.condensation[c]) {
            if (comp_in_s[s] && --indeg_s[s] == 0) ready.push({{stage, info.members[s][0]}, s});
        }
    }
    if (flipped < flips_lo || flipped > flips_hi) {
        result.status = PairStatus::FailBandUnreachable;
        return result;
    }

    Assignment second = first;
    for (std::uint32_t c : flipped_comps)
        for (std::uint32_t node : info.members[c]) second.flip(ImplicationGraph::var_of(node));

    check_internal(phi.evaluate(second), "second constructed assignment does not satisfy");
    result.agreement = static_cast<std::uint64_t>(n) - static_cast<std::uint64_t>(flipped);
    check_internal(
        flip_literal_reading ||
            band.contains(Rational(static_cast<std::int64_t>(result.agreement), n), q, n),
        "constructed overlap missed the band");
    result.a = std::move(first);
    result.b = std::move(second);
    result.status = PairStatus::Success;
    return result;
}

} // namespace gbcsp
