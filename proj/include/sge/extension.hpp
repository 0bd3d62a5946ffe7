#pragma once

#include "sge/radical.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sge {

/// Element of F[sqrt(r_1), ..., sqrt(r_k)] with F = Q(i)(vars).
///
/// The square roots are formal and independent: products are kept as
/// products (sqrt(r_1)*sqrt(r_2) is never merged into sqrt(r_1*r_2)), only
/// sqrt(r)^2 = r is applied. A value that prints as zero is therefore zero;
/// multiplicatively dependent radicands can hide a zero but never fake one.
class ExtNumber {
public:
    ExtNumber() = default;
    ExtNumber(RationalFunction value);    // NOLINT(google-explicit-constructor)
    ExtNumber(const RadicalValue& value);  // NOLINT(google-explicit-constructor)

    bool is_zero() const { return comps_.empty(); }
    bool is_rational() const { return comps_.empty() || (comps_.size() == 1 && comps_.begin()->first == 0); }
    RationalFunction rational_value() const;
    /// The value as sign*outer*sqrt(radicand) when it has at most one radical component.
    std::optional<RadicalValue> as_radical() const;
    const std::vector<RationalFunction>& radicands() const { return rads_; }

    ExtNumber operator-() const;
    ExtNumber& operator+=(const ExtNumber& o);
    ExtNumber& operator-=(const ExtNumber& o) { return *this += -o; }
    ExtNumber& operator*=(const ExtNumber& o);
    friend ExtNumber operator+(ExtNumber a, const ExtNumber& b) { return a += b; }
    friend ExtNumber operator-(ExtNumber a, const ExtNumber& b) { return a -= b; }
    friend ExtNumber operator*(ExtNumber a, const ExtNumber& b) { return a *= b; }
    friend bool operator==(const ExtNumber& a, const ExtNumber& b) { return (a - b).is_zero(); }

    /// Substitutes field variables; empty when a radicand mentions one of them.
    std::optional<ExtNumber> substituted(const std::map<std::string, RationalFunction>& values) const;

    /// Principal square roots of the radicands.
    std::complex<double> evaluate(const std::vector<std::complex<double>>& values) const;
    /// "1/2 - 1/2*sqrt(5)"; radical-free values render as rational functions.
    std::string to_string() const;

private:
    void merge_tables(ExtNumber& o);
    void compact();

    std::vector<RationalFunction> rads_;            // sorted by rendering
    std::map<unsigned, RationalFunction> comps_;    // radical subset mask -> coefficient
};

}  // namespace sge
