#include "gbcsp/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <thread>

#include "gbcsp/random_gen.hpp"
#include "gbcsp/solution_space.hpp"
#include "gbcsp/solver.hpp"
#include "gbcsp/twosat.hpp"

namespace gbcsp {

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) throw InputError("wilson interval: no trials");
    double t = static_cast<double>(trials);
    double p = static_cast<double>(successes) / t;
    double z2 = z * z;
    double denom = 1.0 + z2 / t;
    double center = (p + z2 / (2.0 * t)) / denom;
    double half = z / denom * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

TriState decide_sat(const Formula& phi, std::uint64_t seed) {
    return solve_one(phi, seed) ? TriState::True : TriState::False;
}

namespace {

bool verified_pair(const Formula& phi, const Assignment& a, const Assignment& b, const Rational& q,
                   const OverlapBand& band, bool strict_distinct) {
    if (strict_distinct && a == b) return false;
    if (!band.contains(overlap(a, b), q, phi.num_vars())) return false;
    return phi.evaluate(a) && phi.evaluate(b);
}

// Walk from one sampled solution toward another; any intermediate pair with
// the first endpoint whose overlap lands in the band is a verified witness.
bool pair_walk_fallback(const Formula& phi, const Formula& clausal, const Rational& q,
                        const OverlapBand& band, bool strict_distinct, std::uint64_t seed) {
    auto anchor = solve_one(clausal, mix_seed(seed, 1));
    if (!anchor) return false;
    auto far = solve_one(clausal, mix_seed(seed, 2));
    if (!far || *far == *anchor) return false;
    PathResult path = path_between(clausal, *far, *anchor, phi.num_vars() + 1);
    for (const Assignment& step : path.steps) {
        if (verified_pair(phi, *anchor, step, q, band, strict_distinct)) return true;
        if (verified_pair(phi, *far, step, q, band, strict_distinct)) return true;
    }
    return false;
}

} // namespace

TriState decide_q_overlap_mc(const Formula& phi, const Rational& q, const OverlapBand& band,
                             bool strict_distinct, std::uint64_t seed) {
    if (phi.num_vars() <= kEnumerationMaxVars)
        return decide_q_overlap(phi, q, band, strict_distinct).satisfied ? TriState::True
                                                                         : TriState::False;
    auto clausal = to_clausal_binary(phi);
    if (!clausal)
        throw InputError("q-overlap decision beyond 30 variables needs arity-2 constraints");

    OverlapPairResult pair = construct_overlap_pair(*clausal, q, band, false, strict_distinct);
    if (pair.status == PairStatus::FailUnsat) return TriState::False;
    if (pair.status == PairStatus::Success) {
        if (verified_pair(phi, *pair.a, *pair.b, q, band, strict_distinct)) return TriState::True;
        return TriState::Unknown; // strict-distinct q=1 collapse, never silently true
    }
    if (pair_walk_fallback(phi, *clausal, q, band, strict_distinct, seed)) return TriState::True;
    return TriState::Unknown;
}

namespace {

TriState run_trial(const ScanContext& ctx, double density, std::uint64_t trial_seed) {
    Formula phi = generate_density(ctx.set, ctx.n, density, trial_seed);
    if (ctx.property.kind == ScanProperty::Kind::Sat) return decide_sat(phi, trial_seed);
    return decide_q_overlap_mc(phi, ctx.property.q, ctx.property.band,
                               ctx.property.strict_distinct, trial_seed);
}

} // namespace

ScanRow estimate_probability(const ScanContext& ctx, double density, std::uint64_t trials,
                             std::uint64_t seed) {
    if (trials < 1) throw InputError("estimate_probability: need at least one trial");
    if (!ctx.set) throw InputError("estimate_probability: null constraint set");

    std::vector<std::uint8_t> outcomes(trials);
    auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t t = lo; t < hi; ++t) {
            TriState r = run_trial(ctx, density, mix_seed(seed, t));
            outcomes[t] = r == TriState::True ? 1 : (r == TriState::Unknown ? 2 : 0);
        }
    };

    std::uint64_t w = std::min<std::uint64_t>(std::max(ctx.workers, 1), trials);
    if (w <= 1) {
        run_range(0, trials);
    } else {
        std::vector<std::thread> threads;
        for (std::uint64_t i = 0; i < w; ++i)
            threads.emplace_back(run_range, trials * i / w, trials * (i + 1) / w);
        for (auto& t : threads) t.join();
    }

    ScanRow row;
    row.n = ctx.n;
    row.density = density;
    row.trials = trials;
    row.seed = seed;
    for (std::uint8_t o : outcomes) {
        if (o == 1) ++row.successes;
        if (o == 2) ++row.unknown;
    }
    row.p_hat = static_cast<double>(row.successes) / static_cast<double>(trials);
    auto ci = wilson_interval(row.successes, trials);
    row.ci_lo = ci.lo;
    row.ci_hi = ci.hi;
    if (ctx.on_row) ctx.on_row(row);
    return row;
}

namespace {

// Probe seeds keyed on the density bits: re-probing the same density inside
// one scan reproduces the same row, and nested targets walk one curve.
std::uint64_t density_seed(std::uint64_t seed, double density) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(density));
    std::memcpy(&bits, &density, sizeof(bits));
    return mix_seed(seed, bits);
}

} // namespace

ThresholdEstimate find_threshold(const ScanContext& ctx, double target, double density_lo,
                                 double density_hi, std::uint64_t trials_per_probe, double tol,
                                 std::uint64_t seed) {
    if (!(target > 0.0 && target < 1.0)) throw InputError("find_threshold: target must be in (0,1)");
    if (density_lo > density_hi) throw InputError("find_threshold: density_lo > density_hi");
    if (tol <= 0.0) throw InputError("find_threshold: tolerance must be positive");

    ThresholdEstimate est;
    if (density_lo == density_hi) {
        est.density = density_lo;
        est.ci_lo = est.ci_hi = density_lo;
        est.degenerate = true;
        return est;
    }

    auto probe = [&](double density) {
        ScanRow row =
            estimate_probability(ctx, density, trials_per_probe, density_seed(seed, density));
        est.probes.push_back(row);
        return row;
    };

    ScanRow at_lo = probe(density_lo);
    ScanRow at_hi = probe(density_hi);
    if (at_lo.p_hat < target || at_hi.p_hat > target)
        throw InputError("find_threshold: target probability is not bracketed by the density range");

    double lo = density_lo, hi = density_hi;
    double p_lo = at_lo.p_hat, p_hi = at_hi.p_hat;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        ScanRow row = probe(mid);
        if (row.p_hat >= target) {
            lo = mid;
            p_lo = row.p_hat;
        } else {
            hi = mid;
            p_hi = row.p_hat;
        }
    }
    est.density = 0.5 * (lo + hi);

    // statistical halfwidth: probe noise mapped through the local slope of
    // the transition, plus the bisection bracket itself
    double slope = (p_lo - p_hi) / std::max(hi - lo, 1e-12);
    double wilson_half = 0.0;
    {
        auto ci = wilson_interval(static_cast<std::uint64_t>(std::llround(
                                      target * static_cast<double>(trials_per_probe))),
                                  trials_per_probe);
        wilson_half = 0.5 * (ci.hi - ci.lo);
    }
    double stat_half = slope > 1e-9 ? wilson_half / slope : (density_hi - density_lo);
    double half = 0.5 * (hi - lo) + stat_half;
    est.ci_lo = est.density - half;
    est.ci_hi = est.density + half;
    return est;
}

WidthResult sharpness_width(const ScanContext& ctx, double epsilon, double density_lo,
                            double density_hi, std::uint64_t trials_per_probe, double tol,
                            std::uint64_t seed) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw InputError("sharpness_width: epsilon in (0, 1/2)");
    WidthResult result;
    result.high_target =
        find_threshold(ctx, 1.0 - epsilon, density_lo, density_hi, trials_per_probe, tol, seed);
    result.mid = find_threshold(ctx, 0.5, density_lo, density_hi, trials_per_probe, tol, seed);
    result.low_target =
        find_threshold(ctx, epsilon, density_lo, density_hi, trials_per_probe, tol, seed);
    result.ratio = (result.low_target.density - result.high_target.density) / result.mid.density;
    return result;
}

WCurve scan_w_curve(const ScanContext& ctx, const std::vector<Rational>& q_grid, double target,
                    double density_lo, double density_hi, std::uint64_t trials_per_probe,
                    double tol, std::uint64_t seed) {
    WCurve curve;
    for (const Rational& q : q_grid) {
        ScanContext point_ctx = ctx;
        point_ctx.property =
            ScanProperty::q_overlap(q, ctx.property.band, ctx.property.strict_distinct);
        WCurvePoint point;
        point.q = q;
        try {
            point.estimate = find_threshold(point_ctx, target, density_lo, density_hi,
                                            trials_per_probe, tol, seed);
        } catch (const InputError&) {
            point.censored = true; // crossing left the scanned range
        }
        curve.points.push_back(std::move(point));
    }
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        if (curve.points[i].censored) continue;
        for (std::size_t j = i + 1; j < curve.points.size(); ++j) {
            if (curve.points[j].censored) continue;
            const auto& a = curve.points[i].estimate;
            const auto& b = curve.points[j].estimate;
            double gap = std::max(a.ci_lo - b.ci_hi, b.ci_lo - a.ci_hi);
            if (gap > curve.largest_significant_gap)
                curve.largest_significant_gap = gap;
        }
    }
    return curve;
}

} // namespace gbcsp
