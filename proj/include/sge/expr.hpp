#pragma once

#include "sge/gaussian_rational.hpp"

#include <complex>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace sge {

enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Sech, Exp, Ln, Arctan, Sqrt };

const char* func_name(Func f);
/// Looks up a function by its grammar spelling; false if unknown.
bool func_from_name(const std::string& name, Func& out);

/// Immutable expression tree node handle.
///
/// Factories build nodes verbatim; `canonical` flattens nested sums and
/// products, folds numeric constants, collects like terms and sorts operands
/// into a fixed order. Structural equality (`==`) is exact tree equality.
class Expr {
public:
    enum class Kind { Const, Symbol, Sum, Product, Power, Call, Deriv };

    Expr();  // the constant 0

    static Expr constant(GaussianRational value);
    static Expr symbol(std::string name);
    static Expr sum(std::vector<Expr> terms);
    static Expr product(std::vector<Expr> factors);
    static Expr power(Expr base, int exponent);
    static Expr call(Func f, Expr arg);
    /// Partial derivative of the dependent variable `fn` along `coords`.
    static Expr deriv(std::string fn, std::vector<std::string> coords);

    Kind kind() const;
    const GaussianRational& value() const;
    const std::string& name() const;
    const std::vector<Expr>& args() const;
    int exponent() const;
    Func func() const;
    const std::vector<std::string>& coords() const;

    bool is_constant() const { return kind() == Kind::Const; }
    bool is_zero() const { return is_constant() && value().is_zero(); }
    bool is_one() const { return is_constant() && value().is_one(); }

    std::string to_string() const;

    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Three-way structural order used for canonical sorting.
int compare(const Expr& a, const Expr& b);

Expr canonical(const Expr& e);

// Canonicalizing arithmetic helpers.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr num(GaussianRational value);
Expr sym(const std::string& name);
Expr apply(Func f, const Expr& arg);
Expr pow(const Expr& base, int exponent);

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line, int column);
    int line;
    int column;
};

/// Parses the expression grammar; errors carry line and column (1-based).
Expr parse_expr(const std::string& text);

struct DifferentiationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact derivative with respect to `symbol`, returned in canonical form.
Expr differentiate(const Expr& e, const std::string& symbol);

/// Capture-free substitution of a symbol followed by canonicalization.
Expr substitute(const Expr& e, const std::string& symbol, const Expr& replacement);

/// Replaces every D(fn; ...) node through `resolve` and every bare `fn` symbol by `fn_value`.
template <class Resolve>
Expr replace_derivatives(const Expr& e, const std::string& fn, const Expr& fn_value, Resolve&& resolve);

std::vector<std::string> free_symbols(const Expr& e);
bool contains_deriv(const Expr& e);

using EvalContext = std::map<std::string, std::complex<double>>;

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Complex double evaluation. sech, tanh and ln(cosh(.)) use overflow-free
/// exponential forms; poles and non-finite results raise EvalError.
std::complex<double> eval_numeric(const Expr& e, const EvalContext& ctx);

// ---------------------------------------------------------------------------

template <class Resolve>
Expr replace_derivatives(const Expr& e, const std::string& fn, const Expr& fn_value, Resolve&& resolve) {
    switch (e.kind()) {
        case Expr::Kind::Const:
            return e;
        case Expr::Kind::Symbol:
            return e.name() == fn ? fn_value : e;
        case Expr::Kind::Deriv:
            if (e.name() != fn) throw std::invalid_argument("derivative of '" + e.name() + "' is not supported");
            return resolve(e.coords());
        case Expr::Kind::Sum:
        case Expr::Kind::Product: {
            std::vector<Expr> args;
            for (const auto& a : e.args()) args.push_back(replace_derivatives(a, fn, fn_value, resolve));
            return e.kind() == Expr::Kind::Sum ? Expr::sum(std::move(args)) : Expr::product(std::move(args));
        }
        case Expr::Kind::Power:
            return Expr::power(replace_derivatives(e.args()[0], fn, fn_value, resolve), e.exponent());
        case Expr::Kind::Call:
            return Expr::call(e.func(), replace_derivatives(e.args()[0], fn, fn_value, resolve));
    }
    return e;
}

}  // namespace sge
