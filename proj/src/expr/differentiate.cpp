#include "sge/expr.hpp"

namespace sge {

namespace {

Expr half() { return num(GaussianRational(Rational::normalize(1, 2))); }

/// d f(u) / du for the supported functions.
Expr outer_derivative(Func f, const Expr& u) {
    switch (f) {
        case Func::Sin: return apply(Func::Cos, u);
        case Func::Cos: return -apply(Func::Sin, u);
        case Func::Tan: return pow(apply(Func::Cos, u), -2);
        case Func::Sinh: return apply(Func::Cosh, u);
        case Func::Cosh: return apply(Func::Sinh, u);
        case Func::Tanh: return pow(apply(Func::Sech, u), 2);
        case Func::Sech: return -(apply(Func::Sech, u) * apply(Func::Tanh, u));
        case Func::Exp: return apply(Func::Exp, u);
        case Func::Ln: return pow(u, -1);
        case Func::Arctan: return pow(num(1) + pow(u, 2), -1);
        case Func::Sqrt: return half() * pow(apply(Func::Sqrt, u), -1);
    }
    throw DifferentiationError("unsupported function");
}

Expr diff(const Expr& e, const std::string& s) {
    switch (e.kind()) {
        case Expr::Kind::Const:
            return num(0);
        case Expr::Kind::Symbol:
            return num(e.name() == s ? 1 : 0);
        case Expr::Kind::Deriv:
            throw DifferentiationError("cannot differentiate unresolved derivative node " + e.to_string());
        case Expr::Kind::Sum: {
            std::vector<Expr> terms;
            for (const auto& t : e.args()) terms.push_back(diff(t, s));
            return canonical(Expr::sum(std::move(terms)));
        }
        case Expr::Kind::Product: {
            const auto& f = e.args();
            std::vector<Expr> terms;
            for (std::size_t j = 0; j < f.size(); ++j) {
                Expr dj = diff(f[j], s);
                if (dj.is_zero()) continue;
                std::vector<Expr> factors;
                for (std::size_t k = 0; k < f.size(); ++k) factors.push_back(k == j ? dj : f[k]);
                terms.push_back(Expr::product(std::move(factors)));
            }
            return canonical(Expr::sum(std::move(terms)));
        }
        case Expr::Kind::Power: {
            const Expr& b = e.args()[0];
            Expr db = diff(b, s);
            if (db.is_zero()) return num(0);
            int n = e.exponent();
            return num(n) * pow(b, n - 1) * db;
        }
        case Expr::Kind::Call: {
            const Expr& u = e.args()[0];
            Expr du = diff(u, s);
            if (du.is_zero()) return num(0);
            return outer_derivative(e.func(), u) * du;
        }
    }
    throw DifferentiationError("unsupported node");
}

}  // namespace

Expr differentiate(const Expr& e, const std::string& symbol) { return canonical(diff(canonical(e), symbol)); }

}  // namespace sge
