#include "hypo/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>

namespace hypo {

namespace {

using i128 = __int128;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(i128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

[[noreturn]] void overflow() { throw RationalOverflow("rational arithmetic overflow"); }

}  // namespace

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    i128 l = abs128(static_cast<i128>(a) / std::gcd(a, b) * b);
    if (!fits64(l)) overflow();
    return static_cast<std::int64_t>(l);
}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    *this = from_wide(num, den);
}

Rational Rational::from_wide(i128 num, i128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
    if (!fits64(num) || !fits64(den)) overflow();
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
}

Rational Rational::operator-() const { return from_wide(-static_cast<i128>(num_), den_); }

Rational& Rational::operator+=(const Rational& o) {
    if (den_ == o.den_) {
        *this = from_wide(static_cast<i128>(num_) + o.num_, den_);
    } else {
        *this = from_wide(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                          static_cast<i128>(den_) * o.den_);
    }
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    // Cross-reduce first to keep the intermediates small.
    std::int64_t g1 = std::gcd(num_, o.den_);
    std::int64_t g2 = std::gcd(o.num_, den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    *this = from_wide(static_cast<i128>(num_ / g1) * (o.num_ / g2), static_cast<i128>(den_ / g2) * (o.den_ / g1));
    return *this;
}

Rational& Rational::operator/=(const Rational& o) { return *this *= o.reciprocal(); }

Rational Rational::reciprocal() const {
    if (num_ == 0) throw std::domain_error("reciprocal of zero");
    return from_wide(den_, num_);
}

Rational Rational::pow(unsigned exponent) const {
    Rational result(1);
    Rational base = *this;
    while (exponent != 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent != 0) base *= base;
    }
    return result;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    i128 lhs = static_cast<i128>(a.num_) * b.den_;
    i128 rhs = static_cast<i128>(b.num_) * a.den_;
    return lhs <=> rhs;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::fraction_str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Rational Rational::parse(std::string_view text) {
    auto bad = [&]() -> Rational { throw std::invalid_argument("malformed rational: '" + std::string(text) + "'"); };
    if (text.empty()) return bad();
    bool negative = false;
    std::size_t pos = 0;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        pos = 1;
    }
    std::string_view body = text.substr(pos);
    if (body.empty()) return bad();

    auto parse_int = [&](std::string_view digits) -> std::int64_t {
        if (digits.empty()) bad();
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (ec == std::errc::result_out_of_range) overflow();
        if (ec != std::errc() || ptr != digits.data() + digits.size()) bad();
        return v;
    };

    Rational value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        value = Rational(parse_int(body.substr(0, slash)), parse_int(body.substr(slash + 1)));
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view whole = body.substr(0, dot);
        std::string_view frac = body.substr(dot + 1);
        if (whole.empty() && frac.empty()) return bad();
        std::int64_t w = whole.empty() ? 0 : parse_int(whole);
        Rational f(0);
        if (!frac.empty()) {
            if (frac.size() > 18) overflow();
            std::int64_t scale = 1;
            for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
            f = Rational(parse_int(frac), scale);
        }
        value = Rational(w) + f;
    } else {
        value = Rational(parse_int(body));
    }
    return negative ? -value : value;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::string GaussianRational::str() const {
    if (im.is_zero()) return re.str();
    std::string imag = im == Rational(1) ? "i" : (im == Rational(-1) ? "-i" : im.str() + "*i");
    if (re.is_zero()) return imag;
    if (im.sign() > 0) return re.str() + "+" + imag;
    return re.str() + imag;
}

}  // namespace hypo
