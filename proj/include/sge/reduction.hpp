#pragma once

#include "sge/expr.hpp"
#include "sge/rational_function.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sge {

/// Travelling-wave frame eta = sum_i k_i x_i - v t.
struct WaveFrame {
    std::vector<std::pair<std::string, Rational>> spatial;  // coordinate -> k_i
    std::string time;                                       // empty if the pde has no time coordinate
    std::string speed = "v";

    /// Factor multiplying d/deta for a partial derivative in `coord`, over `vars`.
    ParamPoly multiplier(const std::string& coord, const VarSet& vars) const;
    /// eta as an expression in the original coordinates.
    Expr eta() const;
    void validate() const;
};

class ReductionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotIntegrable : public ReductionError {
public:
    using ReductionError::ReductionError;
};

class MethodInapplicable : public ReductionError {
public:
    using ReductionError::ReductionError;
};

/// Polynomial differential expression in one function of eta.
///
/// A term is keyed by its multiplicity vector m: m[k] is the power of the k-th
/// derivative. Keys never carry trailing zeros. Coefficients live in Q(i)[params, v].
class DerivPoly {
public:
    using Key = std::vector<int>;

    DerivPoly() = default;
    DerivPoly(VarSet coeff_vars, std::string fn) : vars_(std::move(coeff_vars)), fn_(std::move(fn)) {}

    static DerivPoly constant(VarSet vars, std::string fn, const ParamPoly& c);
    /// The single factor fn^(order).
    static DerivPoly derivative(VarSet vars, std::string fn, int order);

    const VarSet& vars() const { return vars_; }
    const std::string& function() const { return fn_; }
    const std::map<Key, ParamPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Key key, const ParamPoly& c);

    DerivPoly& operator+=(const DerivPoly& o);
    friend DerivPoly operator+(DerivPoly a, const DerivPoly& b) { return a += b; }
    friend DerivPoly operator*(const DerivPoly& a, const DerivPoly& b);
    DerivPoly scaled(const ParamPoly& c) const;
    DerivPoly pow(int k) const;
    friend bool operator==(const DerivPoly& a, const DerivPoly& b) { return a.fn_ == b.fn_ && a.terms_ == b.terms_; }

    /// Formal total derivative d/deta.
    DerivPoly d_eta() const;
    /// Copy with the function renamed.
    DerivPoly renamed(std::string fn) const;
    int max_order() const;
    int min_order() const;

    /// Total degree and derivative-order sum of a key.
    static int degree(const Key& k);
    static int order_sum(const Key& k);

    /// "U'''' + 6*U'*U'' + (4*v + 3)*U''"
    std::string to_string() const;
    static std::string key_string(const std::string& fn, const Key& k);

private:
    VarSet vars_;
    std::string fn_ = "U";
    std::map<Key, ParamPoly> terms_;
};

struct BalanceResult {
    int n = 0;
    DerivPoly::Key linear_term;
    DerivPoly::Key nonlinear_term;
};

/// Substitutes u = U(eta) for the frame. `coeff_vars` must contain the parameters and the speed.
DerivPoly reduce_to_ode(const Expr& pde, const std::string& dependent, const WaveFrame& frame,
                        const VarSet& coeff_vars);

/// Term-wise antiderivative with zero integration constant.
DerivPoly integrate_once(const DerivPoly& ode);

/// Sets U' = V.
DerivPoly reduce_order(const DerivPoly& ode, const std::string& new_fn = "V");

BalanceResult homogeneous_balance(const DerivPoly& ode);

}  // namespace sge
