#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "qsep/errors.hpp"

namespace qsep {

// Overflow-checked int64 helpers. Energies in quarter-pi units reach ~5e7
// at N=100 and grow like N^4, so silent wraparound must be impossible.

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow("int64 overflow in addition");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow("int64 overflow in multiplication");
    return r;
}

// Euclidean remainder, always in [0, m).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// Exact rational with int64 numerator/denominator, normalized (den > 0,
// gcd 1). Used for the Hamming-polynomial expansion so that brute-force
// verification can demand exact equality.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num) : num_(num), den_(1) {}
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator+(const Rational& o) const {
        std::int64_t g = std::gcd(den_, o.den_);
        std::int64_t l = checked_mul(den_ / g, o.den_);
        std::int64_t a = checked_mul(num_, o.den_ / g);
        std::int64_t b = checked_mul(o.num_, den_ / g);
        return Rational(checked_add(a, b), l);
    }
    Rational operator-() const { return Rational(-num_, den_, already_normalized{}); }
    Rational operator-(const Rational& o) const { return *this + (-o); }
    Rational operator*(const Rational& o) const {
        std::int64_t g1 = std::gcd(std::abs(num_), o.den_);
        std::int64_t g2 = std::gcd(std::abs(o.num_), den_);
        return Rational(checked_mul(num_ / g1, o.num_ / g2),
                        checked_mul(den_ / g2, o.den_ / g1), already_normalized{});
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw Overflow("rational division by zero");
        std::int64_t n = o.num_ < 0 ? -o.den_ : o.den_;
        std::int64_t d = o.num_ < 0 ? -o.num_ : o.num_;
        return *this * Rational(n, d, already_normalized{});
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_)
                         : std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    struct already_normalized {};
    Rational(std::int64_t n, std::int64_t d, already_normalized) : num_(n), den_(d) {}
    void normalize() {
        if (den_ == 0) throw Overflow("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(std::abs(num_), den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace qsep
