#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <string>
#include <string_view>

namespace fogran {

using BigInt = mpz_class;

// Exact rational, always reduced with positive denominator.
class Rational {
public:
    Rational() = default;
    template <std::integral T>
    Rational(T v) : v_(static_cast<long>(v)) {}
    Rational(long p, long q);
    Rational(const BigInt& p, const BigInt& q = 1);
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    // Accepts "p", "p/q", or a finite decimal such as "-1.25".
    static Rational parse(std::string_view s);
    // Exact image of an IEEE double.
    static Rational from_double(double x);

    BigInt num() const { return v_.get_num(); }
    BigInt den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    std::string str() const { return v_.get_str(); }
    double to_double() const { return v_.get_d(); }
    BigInt floor() const;
    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class v_{0};
};

// [x]^+
inline Rational pos(const Rational& x) { return x.sign() < 0 ? Rational(0) : x; }

// Binomial coefficient; zero when k < 0 or n < k (including n < 0).
BigInt binom(long n, long k);
inline Rational binomq(long n, long k) { return Rational(binom(n, k)); }
// Binomial as a machine integer; throws DomainError if it does not fit in 62 bits.
long binom_small(long n, long k);

}  // namespace fogran
