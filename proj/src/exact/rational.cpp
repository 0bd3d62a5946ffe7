#include "sge/rational.hpp"

#include <cctype>

namespace sge {

Rational::Rational(const mpz_class& num, const mpz_class& den) : Rational(normalize(num, den)) {}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::normalize(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(std::move(q));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    value_ /= o.value_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational");
    return Rational(mpq_class(1 / value_));
}

std::string Rational::to_string() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

namespace {

mpz_class parse_integer(const std::string& digits) {
    if (digits.empty()) throw std::invalid_argument("empty integer literal");
    for (char ch : digits)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw std::invalid_argument("malformed integer literal '" + digits + "'");
    return mpz_class(digits, 10);
}

}  // namespace

Rational Rational::parse(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    Rational out;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        out = normalize(parse_integer(s.substr(0, slash)), parse_integer(s.substr(slash + 1)));
    } else {
        long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string::npos) {
            exponent = std::stol(s.substr(e + 1));
            s = s.substr(0, e);
        }
        mpz_class den = 1;
        if (auto dot = s.find('.'); dot != std::string::npos) {
            std::string frac = s.substr(dot + 1);
            s = s.substr(0, dot) + frac;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
            if (s.empty()) throw std::invalid_argument("malformed decimal literal '" + text + "'");
        }
        mpz_class num = parse_integer(s);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
        if (exponent >= 0) num *= scale;
        else den *= scale;
        out = normalize(num, den);
    }
    return negative ? -out : out;
}

std::pair<mpz_class, mpz_class> split_square(const mpz_class& n, unsigned long limit) {
    if (n <= 0) throw std::invalid_argument("split_square expects a positive integer");
    mpz_class rest = n;
    mpz_class root = 1;
    mpz_class free = 1;
    for (unsigned long p = 2; p <= limit; ++p) {
        if (mpz_class(p) * p > rest) break;
        unsigned count = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            rest /= p;
            ++count;
        }
        for (unsigned k = 0; k < count / 2; ++k) root *= p;
        if (count % 2) free *= p;
    }
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
        root *= r;
    } else {
        free *= rest;
    }
    return {root, free};
}

}  // namespace sge
