#pragma once

#include "sge/gaussian_rational.hpp"
#include "sge/polynomial.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace sge {

using ParamPoly = Polynomial<GaussianRational>;

/// Element of Q(i)(x1..xk): a reduced quotient of two polynomials.
///
/// The denominator's lex-leading coefficient is 1 and gcd(num, den) is 1.
/// Constants carry no variable set so they mix freely with any field.
class RationalFunction {
public:
    RationalFunction() = default;
    RationalFunction(int c) : RationalFunction(GaussianRational(c)) {}   // NOLINT(google-explicit-constructor)
    RationalFunction(long c) : RationalFunction(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(Rational c) : RationalFunction(GaussianRational(std::move(c))) {}  // NOLINT
    RationalFunction(GaussianRational c);                                // NOLINT(google-explicit-constructor)
    explicit RationalFunction(const ParamPoly& p);
    RationalFunction(const ParamPoly& num, const ParamPoly& den);

    static RationalFunction variable(const VarSet& vars, const std::string& name);

    const ParamPoly& num() const { return num_; }
    const ParamPoly& den() const { return den_; }
    const VarSet& vars() const { return num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return is_constant() && constant_value().is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    /// Value of a constant function; throws if not constant.
    GaussianRational constant_value() const;
    bool is_polynomial() const { return den_.is_constant(); }

    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator/=(const RationalFunction& o);
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b);

    RationalFunction inverse() const;
    RationalFunction pow(int k) const;

    /// Lifts to `vars` (a superset by name).
    RationalFunction over(const VarSet& vars) const;

    std::complex<double> evaluate(const std::vector<std::complex<double>>& values) const;
    /// Grammar-compatible rendering: "-2*beta", "(beta - 2*alpha)*gamma^-1".
    std::string to_string() const;

private:
    void normalize();

    ParamPoly num_;
    ParamPoly den_;
};

std::ostream& operator<<(std::ostream& os, const RationalFunction& f);

/// Builds num/den in canonical form. Throws std::invalid_argument on a zero denominator.
RationalFunction rf_normalize(const ParamPoly& num, const ParamPoly& den);

/// Replaces the named variables of f by field elements.
RationalFunction substitute(const RationalFunction& f, const std::map<std::string, RationalFunction>& values);

/// Evaluates a Q(i) polynomial at complex points.
std::complex<double> evaluate(const ParamPoly& p, const std::vector<std::complex<double>>& values);

}  // namespace sge
