#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gbcsp/formula.hpp"
#include "gbcsp/rational.hpp"

namespace gbcsp {

// Property probed by Monte Carlo scans.
struct ScanProperty {
    enum class Kind { Sat, QOverlap };

    Kind kind = Kind::Sat;
    Rational q{0, 1};
    OverlapBand band = OverlapBand::inverse_sqrt();
    bool strict_distinct = false;

    static ScanProperty sat() { return {}; }
    static ScanProperty q_overlap(const Rational& q,
                                  const OverlapBand& band = OverlapBand::inverse_sqrt(),
                                  bool strict_distinct = false) {
        return {Kind::QOverlap, q, band, strict_distinct};
    }
};

struct ScanRow {
    std::uint32_t n = 0;
    double density = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t unknown = 0; // trials no backend could verify either way
    double p_hat = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0; // Wilson 95%
    std::uint64_t seed = 0;
};

struct WilsonInterval {
    double lo, hi;
};
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959964);

struct ScanContext {
    ConstraintSetPtr set;
    std::string set_name;
    std::uint32_t n = 0;
    ScanProperty property;
    int workers = 1;
    std::function<void(const ScanRow&)> on_row; // streaming hook, may be empty
};

// Frequency estimate over seeded trials (counting model, m = round(density*n)).
// Per-trial seeds derive from (seed, trial index); any worker count produces
// identical rows.
ScanRow estimate_probability(const ScanContext& ctx, double density, std::uint64_t trials,
                             std::uint64_t seed);

struct ThresholdEstimate {
    double density = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;
    bool degenerate = false; // lo == hi supplied
    std::vector<ScanRow> probes;
};

// Bisection on density for the target crossing probability. Probes at equal
// densities share derived seeds, so nested targets see one consistent
// empirical curve.
ThresholdEstimate find_threshold(const ScanContext& ctx, double target, double density_lo,
                                 double density_hi, std::uint64_t trials_per_probe, double tol,
                                 std::uint64_t seed);

struct WidthResult {
    double ratio = 0.0;            // (c_at_eps - c_at_1-eps) / c_at_half
    ThresholdEstimate high_target; // crossing at probability 1-eps (low density)
    ThresholdEstimate mid;
    ThresholdEstimate low_target;  // crossing at probability eps (high density)
};

WidthResult sharpness_width(const ScanContext& ctx, double epsilon, double density_lo,
                            double density_hi, std::uint64_t trials_per_probe, double tol,
                            std::uint64_t seed);

struct WCurvePoint {
    Rational q{0, 1};
    bool censored = false; // crossing not bracketed by the scanned range
    ThresholdEstimate estimate;
};

struct WCurve {
    std::vector<WCurvePoint> points;
    // largest CI-separated |c_qi - c_qj| over uncensored pairs (0 when all
    // intervals overlap: no significant reversal anywhere)
    double largest_significant_gap = 0.0;
};

WCurve scan_w_curve(const ScanContext& ctx, const std::vector<Rational>& q_grid, double target,
                    double density_lo, double density_hi, std::uint64_t trials_per_probe,
                    double tol, std::uint64_t seed);

// Per-trial decisions used by the scans; exposed for cross-checking.
enum class TriState { False, True, Unknown };

TriState decide_sat(const Formula& phi, std::uint64_t seed);
// Ladder: exact enumeration up to 30 variables, then the constructive
// 2-SAT pair (with a solution-walk fallback) for binary constraint sets;
// a verified witness is required for True.
TriState decide_q_overlap_mc(const Formula& phi, const Rational& q, const OverlapBand& band,
                             bool strict_distinct, std::uint64_t seed);

} // namespace gbcsp
