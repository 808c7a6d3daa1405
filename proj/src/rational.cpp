#include "gbcsp/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace gbcsp {

namespace {

using Int128 = __int128;

constexpr Int128 kInt64Max = std::numeric_limits<std::int64_t>::max();
constexpr Int128 kInt64Min = std::numeric_limits<std::int64_t>::min();

std::int64_t narrow(Int128 v, const char* what) {
    if (v > kInt64Max || v < kInt64Min) throw InputError(std::string(what) + ": rational overflow");
    return static_cast<std::int64_t>(v);
}

Int128 abs128(Int128 v) { return v < 0 ? -v : v; }

Rational reduce(Int128 num, Int128 den, const char* what) {
    if (den == 0) throw InputError(std::string(what) + ": zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Int128 a = abs128(num), b = den;
    while (b != 0) {
        Int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    return Rational(narrow(num, what), narrow(den, what));
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    Rational r = reduce(num, den, "rational");
    num_ = r.num_;
    den_ = r.den_;
}

std::optional<Rational> Rational::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::string s(text);
    // a/b form
    if (auto slash = s.find('/'); slash != std::string::npos) {
        errno = 0;
        char* end = nullptr;
        long long num = std::strtoll(s.c_str(), &end, 10);
        if (errno != 0 || end != s.c_str() + slash) return std::nullopt;
        errno = 0;
        long long den = std::strtoll(s.c_str() + slash + 1, &end, 10);
        if (errno != 0 || *end != '\0' || den == 0) return std::nullopt;
        return Rational(num, den);
    }
    // decimal form
    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    Int128 num = 0;
    Int128 den = 1;
    bool seen_digit = false;
    bool seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (seen_dot) return std::nullopt;
            seen_dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        seen_digit = true;
        num = num * 10 + (c - '0');
        if (seen_dot) den *= 10;
        if (num > kInt64Max || den > kInt64Max) return std::nullopt;
    }
    if (!seen_digit) return std::nullopt;
    if (neg) num = -num;
    return reduce(num, den, "rational literal");
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& o) const {
    return reduce(Int128(num_) * o.den_ + Int128(o.num_) * den_, Int128(den_) * o.den_, "rational add");
}

Rational Rational::operator-(const Rational& o) const {
    return reduce(Int128(num_) * o.den_ - Int128(o.num_) * den_, Int128(den_) * o.den_, "rational sub");
}

Rational Rational::operator*(const Rational& o) const {
    return reduce(Int128(num_) * o.num_, Int128(den_) * o.den_, "rational mul");
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    Int128 lhs = Int128(a.num_) * b.den_;
    Int128 rhs = Int128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

bool OverlapBand::contains(const Rational& value, const Rational& q, std::int64_t n) const {
    if (n < 1) throw InputError("band: n must be positive");
    Rational d = value - q;
    if (kind_ == Kind::Fixed) {
        Rational neg(-d.num(), d.den());
        return d <= half_width_ && neg <= half_width_;
    }
    // |d| <= 1/sqrt(n)  <=>  d.num^2 * n <= d.den^2
    using U128 = unsigned __int128;
    U128 num = static_cast<U128>(abs128(Int128(d.num())));
    U128 den = static_cast<U128>(d.den());
    U128 num_sq = num * num; // |num| <= 2^63, cannot overflow
    U128 den_sq = den * den;
    if (num_sq != 0 && num_sq > ~U128(0) / static_cast<U128>(n)) return false; // lhs overflows => lhs > rhs
    return num_sq * static_cast<U128>(n) <= den_sq;
}

std::string OverlapBand::describe() const {
    if (kind_ == Kind::InverseSqrt) return "1/sqrt(n)";
    return half_width_.to_string();
}

} // namespace gbcsp
