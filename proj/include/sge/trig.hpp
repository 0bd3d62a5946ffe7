#pragma once

#include "sge/reduction.hpp"

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace sge {

/// Polynomial in s = sin(w), c = cos(w) with coefficients in Q(i)[vars].
///
/// Keys are (a, b) for s^a c^b. Arithmetic results are returned in normal
/// form (a <= 1, using s^2 = 1 - c^2); `add_raw` allows building arbitrary
/// s-degrees for later normalization.
class TrigPoly {
public:
    using Key = std::pair<int, int>;

    TrigPoly() = default;
    explicit TrigPoly(VarSet vars) : vars_(std::move(vars)) {}

    static TrigPoly constant(VarSet vars, const ParamPoly& c);
    static TrigPoly s(VarSet vars);
    static TrigPoly c(VarSet vars);

    const VarSet& vars() const { return vars_; }
    const std::map<Key, ParamPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_normal() const;
    ParamPoly coefficient(int a, int b) const;

    void add_raw(int a, int b, const ParamPoly& coeff);

    TrigPoly& operator+=(const TrigPoly& o);
    TrigPoly& operator-=(const TrigPoly& o);
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
    TrigPoly scaled(const ParamPoly& k) const;
    TrigPoly pow(int k) const;
    friend bool operator==(const TrigPoly& a, const TrigPoly& b) { return a.terms_ == b.terms_; }

    /// Value at numeric (s, c); `values` binds the coefficient variables.
    std::complex<double> evaluate(std::complex<double> s, std::complex<double> c,
                                  const std::vector<std::complex<double>>& values = {}) const;

    std::string to_string() const;

private:
    VarSet vars_;
    std::map<Key, ParamPoly> terms_;
};

TrigPoly trig_normalize(const TrigPoly& p);
/// Derivative under s' = s*c, c' = -s^2, normalized.
TrigPoly trig_diff(const TrigPoly& p);

/// Sine-Gordon ansatz of order n.
///
/// Variables are ordered A_n, B_n, ..., A_1, B_1, A_0, v followed by the
/// parameters; the unknowns are the leading block.
class Ansatz {
public:
    Ansatz(int n, const std::vector<std::string>& parameters, const std::string& speed = "v");

    int n() const { return n_; }
    const VarSet& vars() const { return vars_; }
    /// A_n, B_n, ..., A_0, v
    const std::vector<std::string>& unknowns() const { return unknowns_; }
    const std::vector<std::string>& parameters() const { return parameters_; }
    const std::string& speed() const { return speed_; }
    const TrigPoly& body() const { return derivative(0); }
    /// k-th trig_diff of the body, computed once.
    const TrigPoly& derivative(int k) const;

private:
    int n_;
    std::string speed_;
    std::vector<std::string> unknowns_;
    std::vector<std::string> parameters_;
    VarSet vars_;
    std::shared_ptr<std::vector<TrigPoly>> cache_;
};

Ansatz build_ansatz(int n, const std::vector<std::string>& parameters, const std::string& speed = "v");

/// Replaces each derivative of the ode's function by the matching ansatz derivative.
TrigPoly substitute_ansatz(const DerivPoly& ode, const Ansatz& a);

using SysPoly = Polynomial<RationalFunction>;

struct Equation {
    int a = 0;
    int b = 0;
    SysPoly poly;
};

/// Polynomial equations (= 0) in the unknowns with coefficients in Q(i)(params).
///
/// Coefficients are rational functions over `field`, which lists the
/// parameters followed by the unknowns so that solved values may mention
/// unknowns left free.
struct PolySystem {
    VarSet unknowns;
    VarSet field;
    std::vector<Equation> equations;

    std::vector<SysPoly> polys() const;
};

/// One equation per support monomial, ordered by b then a.
PolySystem extract_coefficient_system(const TrigPoly& p, const Ansatz& a);

/// Splits a polynomial over unknowns+parameters into one over the unknowns
/// with rational-function coefficients over `field`.
SysPoly to_system_poly(const ParamPoly& p, const VarSet& unknowns, const VarSet& field);

/// Parses "3*A0^2 + 4*A0*v" (grammar of expr-core, polynomial only) into a system polynomial.
SysPoly parse_system_poly(const std::string& text, const VarSet& unknowns, const VarSet& field);

}  // namespace sge
