#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sge {

/// Exact rational number backed by GMP. Always stored in lowest terms with a
/// positive denominator; zero is 0/1.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(mpq_class value);

    /// Builds num/den in canonical form. Throws std::invalid_argument on den == 0.
    static Rational normalize(const mpz_class& num, const mpz_class& den);
    /// Parses "p", "-p", "p/q" or a decimal literal such as "0.25" or "1e-3".
    static Rational parse(const std::string& text);

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }
    const mpq_class& raw() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rational inverse() const;
    Rational abs() const { return Rational(mpq_class(::abs(value_))); }
    double to_double() const { return value_.get_d(); }
    std::string to_string() const;

private:
    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Splits n = s^2 * f with f square-free as far as trial division up to
/// `limit` can tell. Returns {s, f}; n must be positive.
std::pair<mpz_class, mpz_class> split_square(const mpz_class& n, unsigned long limit = 100000);

}  // namespace sge
