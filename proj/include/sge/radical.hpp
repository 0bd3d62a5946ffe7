#pragma once

#include "sge/rational_function.hpp"

#include <complex>
#include <string>
#include <vector>

namespace sge {

/// Single-level radical sign * outer * sqrt(radicand).
///
/// Canonical form: the radicand is a polynomial (no denominator), its
/// rational content is square-free and its variable square factors have been
/// moved into `outer`. A radicand of 1 encodes a radical-free value, in which
/// case the sign is folded into `outer`. Otherwise `outer` has a positive
/// leading coefficient and the sign is carried separately so that the two
/// members of a +/- pair differ only in `sign`.
class RadicalValue {
public:
    RadicalValue() = default;
    RadicalValue(RationalFunction value);  // NOLINT(google-explicit-constructor)

    /// Builds and canonicalizes sign * outer * sqrt(radicand).
    static RadicalValue make(int sign, const RationalFunction& outer, const RationalFunction& radicand);

    int sign() const { return sign_; }
    const RationalFunction& outer() const { return outer_; }
    const RationalFunction& radicand() const { return radicand_; }

    bool is_zero() const { return outer_.is_zero(); }
    bool is_rational() const { return radicand_.is_one(); }
    /// Value as a field element; only valid when is_rational().
    RationalFunction rational_value() const;
    /// sign * outer as a field element (the coefficient of sqrt(radicand)).
    RationalFunction signed_outer() const { return sign_ < 0 ? -outer_ : outer_; }

    RadicalValue negated() const;
    /// outer^2 * radicand, exactly.
    RationalFunction square() const;

    std::complex<double> evaluate(const std::vector<std::complex<double>>& values) const;
    /// Grammar-compatible rendering, e.g. "-gamma^-1*sqrt(-2*beta*gamma)".
    std::string to_string() const;

    friend bool operator==(const RadicalValue& a, const RadicalValue& b) {
        return a.sign_ == b.sign_ && a.outer_ == b.outer_ && a.radicand_ == b.radicand_;
    }

private:
    int sign_ = 1;
    RationalFunction outer_;
    RationalFunction radicand_{1};
};

RadicalValue radical_canonicalize(const RationalFunction& outer, const RationalFunction& radicand);
RationalFunction radical_square(const RadicalValue& r);

}  // namespace sge
