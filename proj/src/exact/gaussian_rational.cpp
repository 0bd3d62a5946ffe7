#include "sge/gaussian_rational.hpp"

namespace sge {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (im_.is_zero() && o.im_.is_zero()) {
        re_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero gaussian rational");
    if (im_.is_zero()) return {re_.inverse()};
    Rational n = norm();
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.im_.is_zero()) {
        if (o.re_.is_zero()) throw std::domain_error("division by zero gaussian rational");
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

namespace {

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q.sign() < 0) return std::nullopt;
    mpz_class n = q.numerator(), d = q.denominator();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
}

}  // namespace

std::optional<GaussianRational> GaussianRational::sqrt() const {
    if (im_.is_zero()) {
        if (re_.sign() >= 0) {
            if (auto r = rational_sqrt(re_)) return GaussianRational(*r);
            return std::nullopt;
        }
        if (auto r = rational_sqrt(-re_)) return GaussianRational(Rational(0), *r);
        return std::nullopt;
    }
    // (a + bi)^2 = re + im*i  =>  a^2 = (|z| + re)/2, b = im / (2a)
    auto modulus = rational_sqrt(norm());
    if (!modulus) return std::nullopt;
    auto a = rational_sqrt((*modulus + re_) / Rational(2));
    if (!a || a->is_zero()) return std::nullopt;
    return GaussianRational(*a, im_ / (Rational(2) * *a));
}

std::string GaussianRational::to_string() const {
    if (im_.is_zero()) return re_.to_string();
    std::string imag;
    if (im_ == Rational(1)) imag = "i";
    else if (im_ == Rational(-1)) imag = "-i";
    else imag = im_.to_string() + "*i";
    if (re_.is_zero()) return imag;
    if (im_.sign() < 0) {
        std::string mag = (-im_).is_one() ? "i" : (-im_).to_string() + "*i";
        return re_.to_string() + " - " + mag;
    }
    return re_.to_string() + " + " + imag;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.to_string(); }

}  // namespace sge
