#include "sge/radical.hpp"

#include <limits>
#include <sstream>

namespace sge {

namespace {

/// Positive rational content of p: gcd of all numerators over lcm of all denominators.
Rational rational_content(const ParamPoly& p) {
    mpz_class num = 0, den = 1;
    auto absorb = [&](const Rational& r) {
        if (r.is_zero()) return;
        mpz_class n = r.numerator();
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), n.get_mpz_t());
        mpz_class d = r.denominator();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    };
    for (const auto& [e, c] : p.terms()) {
        absorb(c.re());
        absorb(c.im());
    }
    return Rational(num, den);
}

struct Split {
    RationalFunction outer;
    RationalFunction radicand;
};

/// sqrt(c) for a constant c in Q(i).
Split split_constant(const GaussianRational& c) {
    if (c.is_zero()) return {RationalFunction(0), RationalFunction(1)};
    if (auto root = c.sqrt()) return {RationalFunction(*root), RationalFunction(1)};
    if (!c.is_real()) return {RationalFunction(1), RationalFunction(c)};
    Rational q = c.re();
    GaussianRational unit(1);
    if (q.sign() < 0) {
        unit = GaussianRational::i();
        q = -q;
    }
    // sqrt(a/b) = sqrt(a*b)/b
    mpz_class ab = q.numerator() * q.denominator();
    auto [root, free] = split_square(ab);
    GaussianRational outer = unit * GaussianRational(Rational(root, q.denominator()));
    return {RationalFunction(outer), RationalFunction(GaussianRational(Rational(free, mpz_class(1))))};
}

/// sqrt(P) for a polynomial P: pull out content squares, monomial squares and perfect squares.
Split split_polynomial(ParamPoly p) {
    if (p.is_constant()) return split_constant(p.constant_term());
    const VarSet& vars = p.vars();
    RationalFunction outer(1);

    // monomial square factors
    Exponents low(p.arity(), std::numeric_limits<int>::max());
    for (const auto& [e, c] : p.terms())
        for (std::size_t k = 0; k < e.size(); ++k) low[k] = std::min(low[k], e[k]);
    Exponents half(p.arity(), 0), full(p.arity(), 0);
    bool any = false;
    for (std::size_t k = 0; k < low.size(); ++k) {
        half[k] = low[k] / 2;
        full[k] = 2 * half[k];
        any = any || half[k] > 0;
    }
    if (any) {
        ParamPoly mono(vars);
        mono.add_term(half, GaussianRational(1));
        outer *= RationalFunction(mono);
        ParamPoly reduced(vars);
        for (const auto& [e, c] : p.terms()) reduced.add_term(e - full, c);
        p = std::move(reduced);
    }

    // rational content, sign fixed by the leading coefficient
    Rational content = rational_content(p);
    if (p.leading_coeff().leading_sign() < 0) content = -content;
    p = p.scaled(GaussianRational(content.inverse()));

    // perfect squares of the primitive part
    if (auto root = sqrt_exact(p, [](const GaussianRational& c) { return c.sqrt(); })) {
        Split s = split_constant(GaussianRational(content));
        return {outer * RationalFunction(*root) * s.outer, s.radicand};
    }

    int sign = content.sign();
    Rational mag = content.abs();
    mpz_class ab = mag.numerator() * mag.denominator();
    auto [root, free] = split_square(ab);
    outer *= RationalFunction(Rational(root, mag.denominator()));
    GaussianRational factor(Rational(sign) * Rational(free, mpz_class(1)));
    return {outer, RationalFunction(p.scaled(factor))};
}

}  // namespace

RadicalValue::RadicalValue(RationalFunction value) : outer_(std::move(value)) {}

RadicalValue RadicalValue::make(int sign, const RationalFunction& outer, const RationalFunction& radicand) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("radical sign must be +1 or -1");
    RadicalValue out;
    if (outer.is_zero() || radicand.is_zero()) {
        out.outer_ = RationalFunction(0);
        return out;
    }
    // sqrt(p/q) = sqrt(p*q)/q
    ParamPoly p = radicand.num();
    RationalFunction scale = outer;
    if (!radicand.den().is_constant()) {
        p = p * radicand.den();
        scale /= RationalFunction(radicand.den());
    }
    Split s = split_polynomial(p);
    RationalFunction o = scale * s.outer;
    if (sign < 0) o = -o;
    if (s.radicand.is_one()) {
        out.outer_ = o;
        return out;
    }
    out.radicand_ = s.radicand;
    const GaussianRational& lead = o.num().leading_coeff();
    if (lead.leading_sign() < 0) {
        out.sign_ = -1;
        out.outer_ = -o;
    } else {
        out.outer_ = o;
    }
    return out;
}

RadicalValue radical_canonicalize(const RationalFunction& outer, const RationalFunction& radicand) {
    return RadicalValue::make(1, outer, radicand);
}

RationalFunction radical_square(const RadicalValue& r) { return r.square(); }

RationalFunction RadicalValue::rational_value() const {
    if (!is_rational()) throw std::logic_error("radical value is not rational");
    return outer_;
}

RadicalValue RadicalValue::negated() const {
    RadicalValue out = *this;
    if (is_rational()) out.outer_ = -outer_;
    else out.sign_ = -sign_;
    return out;
}

RationalFunction RadicalValue::square() const { return outer_ * outer_ * radicand_; }

std::complex<double> RadicalValue::evaluate(const std::vector<std::complex<double>>& values) const {
    std::complex<double> v = outer_.evaluate(values);
    if (!is_rational()) v *= std::sqrt(radicand_.evaluate(values));
    return sign_ < 0 ? -v : v;
}

std::string RadicalValue::to_string() const {
    std::string o = outer_.to_string();
    if (is_rational()) return o;
    std::string r = "sqrt(" + radicand_.to_string() + ")";
    std::string body;
    bool compound = o.find(' ') != std::string::npos;
    if (o == "1") body = r;
    else body = (compound ? "(" + o + ")" : o) + "*" + r;
    return sign_ < 0 ? "-" + body : body;
}

}  // namespace sge
