#pragma once

#include "sge/rational.hpp"

#include <complex>
#include <optional>
#include <string>

namespace sge {

/// Element of Q(i): re + im*i with exact rational parts.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(long re) : re_(re) {}                  // NOLINT(google-explicit-constructor)
    GaussianRational(int re) : re_(re) {}                   // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }
    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return {Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const { return re_.is_one() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }
    /// re^2 + im^2
    Rational norm() const { return re_ * re_ + im_ * im_; }
    GaussianRational conj() const { return {re_, -im_}; }
    GaussianRational inverse() const;

    /// Exact square root inside Q(i) when one exists.
    std::optional<GaussianRational> sqrt() const;

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Total order (re first, then im); only used for canonical sorting.
    friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
        if (auto c = a.re_ <=> b.re_; c != 0) return c;
        return a.im_ <=> b.im_;
    }

    /// Sign of the first nonzero component (re, then im); 0 for zero.
    int leading_sign() const { return re_.is_zero() ? im_.sign() : re_.sign(); }

    std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
    /// "3/2", "-i", "1/2 + 2*i", ...
    std::string to_string() const;

private:
    Rational re_;
    Rational im_;
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& g);

}  // namespace sge
