#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "gbcsp/error.hpp"

namespace gbcsp {

// Exact rational with 64-bit terms. Overlaps and band membership are
// decided on these, never on floating point, so results are deterministic.
// Intermediate products go through 128-bit integers; overflow throws.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den);
    Rational(std::int64_t value) : num_(value), den_(1) {}

    // Accepts "3/10", "0.3", ".5", "1", "-2/7".
    static std::optional<Rational> parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string to_string() const; // "3/10", integers without the denominator

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

// Acceptance window for overlap values around a target q, on the
// normalized [0,1] overlap scale. The default half-width is 1/sqrt(n);
// a fixed rational half-width can be configured instead.
class OverlapBand {
public:
    static OverlapBand inverse_sqrt() { return OverlapBand(Kind::InverseSqrt, Rational()); }
    static OverlapBand fixed(const Rational& half_width) { return OverlapBand(Kind::Fixed, half_width); }

    // Exact test: for the default band, |v - q| <= 1/sqrt(n) is decided as
    // (v - q)^2 * n <= 1 in integer arithmetic.
    bool contains(const Rational& value, const Rational& q, std::int64_t n) const;

    bool is_default() const { return kind_ == Kind::InverseSqrt; }
    std::string describe() const;

private:
    enum class Kind { InverseSqrt, Fixed };
    OverlapBand(Kind k, const Rational& w) : kind_(k), half_width_(w) {}

    Kind kind_;
    Rational half_width_;
};

inline bool in_overlap_band(const Rational& v, const Rational& q, std::int64_t n,
                            const OverlapBand& band = OverlapBand::inverse_sqrt()) {
    return band.contains(v, q, n);
}

} // namespace gbcsp
