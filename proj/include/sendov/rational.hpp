#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace sendov {

// Exact rational arithmetic on 64-bit integers. Used for the handful of
// table values that are honest rationals (n = 3, 4, 5); everything else in
// the library is plain double. Overflow throws rather than wrapping.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rational operator+(Rational a, Rational b) {
        return Rational(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                        checked_mul(a.den, b.den));
    }
    friend Rational operator-(Rational a, Rational b) {
        return Rational(checked_sub(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                        checked_mul(a.den, b.den));
    }
    friend Rational operator*(Rational a, Rational b) {
        return Rational(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
    }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num == 0) throw std::invalid_argument("Rational: division by zero");
        return Rational(checked_mul(a.num, b.den), checked_mul(a.den, b.num));
    }
    friend Rational operator-(Rational a) { return Rational(-a.num, a.den); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return checked_mul(a.num, b.den) < checked_mul(b.num, a.den);
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }

  private:
    static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rational overflow");
        return r;
    }
    static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rational overflow");
        return r;
    }
    static std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("Rational overflow");
        return r;
    }
};

}  // namespace sendov
