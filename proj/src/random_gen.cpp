#include "gbcsp/random_gen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

namespace gbcsp {

namespace {

using U128 = unsigned __int128;

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Hard cap on materialized formulas; generation is explicit, not lazy.
constexpr std::uint64_t kMaxApplications = 50'000'000;

} // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& s : s_) s = splitmix64(sm);
}

std::uint64_t Rng::next() {
    std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw InputError("rng: zero bound");
    std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
    while (true) {
        std::uint64_t r = next();
        if (r >= threshold) return r % bound;
    }
}

unsigned __int128 Rng::below128(unsigned __int128 bound) {
    if (bound == 0) throw InputError("rng: zero bound");
    if (bound <= ~std::uint64_t{0}) return below(static_cast<std::uint64_t>(bound));
    U128 threshold = (U128(0) - bound) % bound;
    while (true) {
        U128 r = (U128(next()) << 64) | next();
        if (r >= threshold) return r % bound;
    }
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ (0x9e3779b97f4a7c15ULL + stream * 0xd1342543de82ef95ULL);
    std::uint64_t a = splitmix64(state);
    std::uint64_t b = splitmix64(state);
    return a ^ rotl(b, 23);
}

unsigned __int128 ordered_tuple_count(std::uint64_t n, int k) {
    if (k < 1 || k > kMaxArity) throw InputError("tuple count: bad arity");
    if (n < static_cast<std::uint64_t>(k)) return 0;
    U128 total = 1;
    for (int i = 0; i < k; ++i) {
        U128 factor = n - static_cast<std::uint64_t>(i);
        if (total > ~U128(0) / factor)
            throw TooLargeError("tuple index space exceeds 128 bits; reduce n or arity");
        total *= factor;
    }
    return total;
}

double expected_constraint_count(const ConstraintSet& set, std::uint64_t n, double p) {
    if (p < 0.0 || p > 1.0) throw InputError("expected count: p outside [0,1]");
    double tuples = 1.0;
    for (int i = 0; i < set.arity(); ++i) tuples *= static_cast<double>(n - static_cast<std::uint64_t>(i));
    if (n < static_cast<std::uint64_t>(set.arity())) tuples = 0.0;
    return p * static_cast<double>(set.size()) * tuples;
}

double density_to_p(const ConstraintSet& set, std::uint64_t n, double density) {
    if (density < 0.0) throw InputError("density_to_p: negative density");
    double per_unit = expected_constraint_count(set, n, 1.0);
    if (per_unit <= 0.0) throw InputError("density_to_p: no tuples available (n < k)");
    double p = density * static_cast<double>(n) / per_unit;
    if (p > 1.0)
        throw InputError("density_to_p: density " + std::to_string(density) +
                         " needs inclusion probability > 1");
    return p;
}

namespace {

// Decode a pair index (tuple rank * |set| + relation) into an application.
// Tuple ranks are mixed-radix digits (n, n-1, ..., n-k+1), each digit mapped
// to the d-th smallest still-unused variable.
void decode_pair(U128 index, std::uint64_t n, int k, std::size_t set_size,
                 std::uint32_t& rel_out, std::uint32_t* vars_out) {
    rel_out = static_cast<std::uint32_t>(index % set_size);
    U128 rank = index / set_size;
    std::uint32_t digits[kMaxArity];
    for (int i = 0; i < k; ++i) {
        std::uint64_t radix = n - static_cast<std::uint64_t>(i);
        digits[i] = static_cast<std::uint32_t>(rank % radix);
        rank /= radix;
    }
    // map digit to actual variable, skipping earlier picks
    std::uint32_t used_sorted[kMaxArity];
    for (int i = 0; i < k; ++i) {
        std::uint32_t v = digits[i];
        for (int j = 0; j < i; ++j)
            if (used_sorted[j] <= v) ++v;
        vars_out[i] = v;
        // insert v into the sorted prefix
        int j = i;
        while (j > 0 && used_sorted[j - 1] > v) {
            used_sorted[j] = used_sorted[j - 1];
            --j;
        }
        used_sorted[j] = v;
    }
}

void append_pair(Formula& phi, U128 index, std::uint64_t n, int k, std::size_t set_size) {
    std::uint32_t rel;
    std::uint32_t vars[kMaxArity];
    decode_pair(index, n, k, set_size, rel, vars);
    phi.add(rel, {vars, static_cast<std::size_t>(k)});
}

// Bernoulli(p) over positions [0, total): advance by geometric gaps.
// One pass yields both the inclusion count and the identities, already in
// ascending order.
std::vector<U128> bernoulli_positions(U128 total, double p, Rng& rng) {
    std::vector<U128> hits;
    if (p <= 0.0 || total == 0) return hits;
    if (p >= 1.0) {
        if (total > kMaxApplications)
            throw TooLargeError("p=1 would materialize more than " + std::to_string(kMaxApplications) +
                                " constraints");
        for (U128 i = 0; i < total; ++i) hits.push_back(i);
        return hits;
    }
    const double log1mp = std::log1p(-p);
    U128 pos = 0;
    while (true) {
        double u = rng.unit();
        // skip = floor(log(1-u)/log(1-p)) failures before the next success
        double skip = std::floor(std::log1p(-u) / log1mp);
        if (skip >= 1.7e38 || U128(skip) >= total - pos) break;
        pos += U128(skip);
        hits.push_back(pos);
        if (hits.size() > kMaxApplications)
            throw TooLargeError("generated formula exceeds the application cap");
        ++pos;
        if (pos >= total) break;
    }
    return hits;
}

// Floyd's algorithm: m distinct values from [0, total).
std::vector<U128> sample_distinct(U128 total, std::uint64_t m, Rng& rng) {
    std::set<U128> chosen;
    for (U128 j = total - m; j < total; ++j) {
        U128 r = rng.below128(j + 1);
        if (!chosen.insert(r).second) chosen.insert(j);
    }
    return {chosen.begin(), chosen.end()};
}

} // namespace

Formula generate(const GenSpec& spec) {
    if (!spec.set) throw InputError("generate: null constraint set");
    const ConstraintSet& set = *spec.set;
    const int k = set.arity();
    if (spec.n < static_cast<std::uint32_t>(k))
        throw InputError("generate: n must be at least the arity");

    U128 tuples = ordered_tuple_count(spec.n, k);
    if (tuples > ~U128(0) / set.size())
        throw TooLargeError("pair index space exceeds 128 bits; reduce n or arity");
    U128 total = tuples * set.size();

    Rng rng(mix_seed(spec.seed, 0x67656e00ULL)); // stream tag for generation
    Formula phi(spec.n, spec.set);

    std::vector<U128> picks;
    switch (spec.model) {
        case GenSpec::Model::ConstantProbability:
            if (spec.p < 0.0 || spec.p > 1.0) throw InputError("generate: p outside [0,1]");
            picks = bernoulli_positions(total, spec.p, rng);
            break;
        case GenSpec::Model::Counting: {
            if (U128(spec.m) > total)
                throw InputError("generate: counting model asks for " + std::to_string(spec.m) +
                                 " distinct constraints but only " +
                                 std::to_string(static_cast<double>(total)) + " exist");
            if (spec.m > kMaxApplications) throw TooLargeError("generate: m exceeds the application cap");
            picks = sample_distinct(total, spec.m, rng);
            break;
        }
        case GenSpec::Model::Multiset: {
            if (spec.m > kMaxApplications) throw TooLargeError("generate: m exceeds the application cap");
            if (spec.m > 0 && total == 0) throw InputError("generate: no tuples available");
            picks.reserve(spec.m);
            for (std::uint64_t i = 0; i < spec.m; ++i) picks.push_back(rng.below128(total));
            break;
        }
    }

    for (U128 index : picks) append_pair(phi, index, spec.n, k, set.size());

    if (!spec.dedupe_symmetric) return phi;

    // Keep the first application of each constraint; clauses compare as
    // literal sets, everything else as an exact (relation, tuple) pair.
    Formula dedup(spec.n, spec.set);
    std::set<std::vector<std::int64_t>> seen;
    for (std::size_t app = 0; app < phi.num_applications(); ++app) {
        const Relation& r = set[phi.relation_of(app)];
        auto vars = phi.vars_of(app);
        std::vector<std::int64_t> key;
        if (r.is_clause()) {
            std::uint32_t fr = r.falsifying_row();
            for (std::size_t i = 0; i < vars.size(); ++i) {
                std::int64_t lit = static_cast<std::int64_t>(vars[i]) + 1;
                if ((fr >> i) & 1u) lit = -lit;
                key.push_back(lit);
            }
            std::sort(key.begin(), key.end());
            key.push_back(-1'000'000'000); // clause marker
        } else {
            key.push_back(phi.relation_of(app));
            key.insert(key.end(), vars.begin(), vars.end());
        }
        if (seen.insert(std::move(key)).second) dedup.add(phi.relation_of(app), vars);
    }
    return dedup;
}

Formula generate_density(ConstraintSetPtr set, std::uint32_t n, double density, std::uint64_t seed) {
    if (density < 0.0) throw InputError("generate_density: negative density");
    GenSpec spec;
    spec.model = GenSpec::Model::Counting;
    spec.m = static_cast<std::uint64_t>(std::llround(density * static_cast<double>(n)));
    spec.n = n;
    spec.set = std::move(set);
    spec.seed = seed;
    return generate(spec);
}

} // namespace gbcsp
