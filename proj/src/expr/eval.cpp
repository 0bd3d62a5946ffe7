#include "sge/expr.hpp"

#include <cmath>

namespace sge {

namespace {

using cd = std::complex<double>;

cd stable_tanh(cd z) {
    if (z.real() < 0) return -stable_tanh(-z);
    cd e = std::exp(-2.0 * z);
    return (1.0 - e) / (1.0 + e);
}

cd stable_sech(cd z) {
    if (z.real() < 0) z = -z;
    cd e = std::exp(-z);
    return 2.0 * e / (1.0 + e * e);
}

/// ln(cosh z) = z + ln((1 + e^{-2z}) / 2) for Re z >= 0.
cd log_cosh(cd z) {
    if (z.real() < 0) z = -z;
    return z + std::log((1.0 + std::exp(-2.0 * z)) / 2.0);
}

cd checked(cd v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw EvalError(std::string("non-finite value in ") + what);
    return v;
}

cd eval(const Expr& e, const EvalContext& ctx);

cd eval_call(Func f, const Expr& arg, const EvalContext& ctx) {
    if (f == Func::Ln && arg.kind() == Expr::Kind::Call && arg.func() == Func::Cosh)
        return checked(log_cosh(eval(arg.args()[0], ctx)), "ln(cosh)");
    cd z = eval(arg, ctx);
    switch (f) {
        case Func::Sin: return checked(std::sin(z), "sin");
        case Func::Cos: return checked(std::cos(z), "cos");
        case Func::Tan: return checked(std::tan(z), "tan");
        case Func::Sinh: return checked(std::sinh(z), "sinh");
        case Func::Cosh: return checked(std::cosh(z), "cosh");
        case Func::Tanh: return checked(stable_tanh(z), "tanh");
        case Func::Sech: return checked(stable_sech(z), "sech");
        case Func::Exp: return checked(std::exp(z), "exp");
        case Func::Ln:
            if (z == cd(0)) throw EvalError("pole: ln(0)");
            return checked(std::log(z), "ln");
        case Func::Arctan: return checked(std::atan(z), "arctan");
        case Func::Sqrt: return checked(std::sqrt(z), "sqrt");
    }
    throw EvalError("unsupported function");
}

cd eval(const Expr& e, const EvalContext& ctx) {
    switch (e.kind()) {
        case Expr::Kind::Const:
            return e.value().to_complex();
        case Expr::Kind::Symbol: {
            auto it = ctx.find(e.name());
            if (it == ctx.end()) throw EvalError("unbound symbol '" + e.name() + "'");
            return it->second;
        }
        case Expr::Kind::Deriv:
            throw EvalError("cannot evaluate derivative node " + e.to_string());
        case Expr::Kind::Sum: {
            cd s = 0;
            for (const auto& t : e.args()) s += eval(t, ctx);
            return checked(s, "sum");
        }
        case Expr::Kind::Product: {
            cd p = 1;
            for (const auto& t : e.args()) p *= eval(t, ctx);
            return checked(p, "product");
        }
        case Expr::Kind::Power: {
            cd b = eval(e.args()[0], ctx);
            int n = e.exponent();
            if (n < 0 && b == cd(0)) throw EvalError("pole: zero to a negative power");
            cd out = 1;
            cd base = n < 0 ? 1.0 / b : b;
            for (int k = 0; k < std::abs(n); ++k) out *= base;
            return checked(out, "power");
        }
        case Expr::Kind::Call:
            return eval_call(e.func(), e.args()[0], ctx);
    }
    throw EvalError("unsupported node");
}

}  // namespace

std::complex<double> eval_numeric(const Expr& e, const EvalContext& ctx) { return eval(e, ctx); }

}  // namespace sge
