#include "sge/rational_function.hpp"

#include <ostream>

namespace sge {

namespace {

ParamPoly lift(const ParamPoly& p, const VarSet& vars) {
    if (p.vars() || !vars) return p;
    return ParamPoly::constant(vars, p.constant_term());
}

/// Common variable set of two operands (null when both are constants).
VarSet common_vars(const ParamPoly& a, const ParamPoly& b) {
    if (!a.vars()) return b.vars();
    if (b.vars() && !same_vars(a.vars(), b.vars()))
        throw std::invalid_argument("rational functions over different variable sets");
    return a.vars();
}

ParamPoly scalar(const GaussianRational& c) { return ParamPoly::constant(nullptr, c); }

}  // namespace

RationalFunction::RationalFunction(GaussianRational c) : num_(scalar(c)), den_(scalar(GaussianRational(1))) {}

RationalFunction::RationalFunction(const ParamPoly& p)
    : num_(p), den_(ParamPoly::constant(p.vars(), GaussianRational(1))) {}

RationalFunction::RationalFunction(const ParamPoly& num, const ParamPoly& den) {
    if (den.is_zero()) throw std::invalid_argument("rational function with zero denominator");
    VarSet v = common_vars(num, den);
    num_ = lift(num, v);
    den_ = lift(den, v);
    normalize();
}

RationalFunction rf_normalize(const ParamPoly& num, const ParamPoly& den) { return {num, den}; }

RationalFunction RationalFunction::variable(const VarSet& vars, const std::string& name) {
    return RationalFunction(ParamPoly::variable(vars, name));
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = ParamPoly::constant(num_.vars(), GaussianRational(1));
        return;
    }
    if (den_.is_constant()) {
        GaussianRational d = den_.constant_term();
        if (!d.is_one()) num_ = num_.scaled(d.inverse());
        den_ = ParamPoly::constant(den_.vars(), GaussianRational(1));
        return;
    }
    if (!num_.is_constant()) {
        ParamPoly g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = divide_exact(num_, g);
            den_ = divide_exact(den_, g);
        }
    }
    GaussianRational lc = den_.leading_coeff();
    if (!lc.is_one()) {
        GaussianRational inv = lc.inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

GaussianRational RationalFunction::constant_value() const {
    if (!is_constant()) throw std::logic_error("rational function is not constant");
    return num_.constant_term() / den_.constant_term();
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out = *this;
    out.num_ = -num_;
    return out;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (o.is_zero()) return *this;
    if (is_constant() && o.is_constant() && !vars() && !o.vars()) {
        num_ = scalar(num_.constant_term() + o.num_.constant_term());
        return *this;
    }
    VarSet v = common_vars(num_, o.num_);
    ParamPoly an = lift(num_, v), ad = lift(den_, v), bn = lift(o.num_, v), bd = lift(o.den_, v);
    if (ad == bd) {
        num_ = an + bn;
        den_ = ad;
    } else {
        num_ = an * bd + bn * ad;
        den_ = ad * bd;
    }
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) return *this = o;
    if (is_constant() && o.is_constant() && !vars() && !o.vars()) {
        num_ = scalar(num_.constant_term() * o.num_.constant_term());
        return *this;
    }
    VarSet v = common_vars(num_, o.num_);
    if (o.is_constant()) {
        num_ = lift(num_, v).scaled(o.constant_value());
        den_ = lift(den_, v);
        return *this;
    }
    if (is_constant()) {
        GaussianRational c = constant_value();
        num_ = lift(o.num_, v).scaled(c);
        den_ = lift(o.den_, v);
        return *this;
    }
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational function");
    RationalFunction out;
    out.num_ = den_;
    out.den_ = num_;
    out.normalize();
    return out;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

RationalFunction RationalFunction::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    RationalFunction out(1);
    for (int j = 0; j < k; ++j) out *= *this;
    return out;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_constant() && b.is_constant()) return a.constant_value() == b.constant_value();
    if (a.is_constant() != b.is_constant()) return false;
    return a.num_ == b.num_ && a.den_ == b.den_;
}

RationalFunction RationalFunction::over(const VarSet& target) const {
    RationalFunction out;
    if (!vars()) {
        out.num_ = lift(num_, target);
        out.den_ = lift(den_, target);
    } else {
        out.num_ = num_.reindex(target);
        out.den_ = den_.reindex(target);
        out.normalize();
    }
    return out;
}

RationalFunction substitute(const RationalFunction& f, const std::map<std::string, RationalFunction>& values) {
    if (f.is_constant()) return f;
    const VarSet& vars = f.vars();
    auto eval = [&](const ParamPoly& p) {
        RationalFunction sum(0);
        for (const auto& [e, c] : p.terms()) {
            RationalFunction t(c);
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                auto it = values.find((*vars)[k]);
                RationalFunction base = it != values.end() ? it->second : RationalFunction::variable(vars, (*vars)[k]);
                t *= base.pow(e[k]);
            }
            sum += t;
        }
        return sum;
    };
    return eval(f.num()) / eval(f.den());
}

std::complex<double> evaluate(const ParamPoly& p, const std::vector<std::complex<double>>& values) {
    std::complex<double> sum = 0;
    for (const auto& [e, c] : p.terms()) {
        std::complex<double> term = c.to_complex();
        for (std::size_t k = 0; k < e.size(); ++k)
            for (int j = 0; j < e[k]; ++j) term *= values.at(k);
        sum += term;
    }
    return sum;
}

std::complex<double> RationalFunction::evaluate(const std::vector<std::complex<double>>& values) const {
    return sge::evaluate(num_, values) / sge::evaluate(den_, values);
}

namespace {

bool is_atom(const std::string& s) {
    for (char ch : s)
        if (ch == '*' || ch == '+' || ch == '-' || ch == '^' || ch == ' ' || ch == '/') return false;
    return true;
}

bool has_top_level_sum(const std::string& s) {
    int depth = 0;
    for (std::size_t k = 1; k < s.size(); ++k) {
        char ch = s[k];
        if (ch == '(') ++depth;
        else if (ch == ')') --depth;
        else if (depth == 0 && (ch == '+' || ch == '-') && s[k - 1] == ' ') return true;
    }
    return false;
}

}  // namespace

std::string RationalFunction::to_string() const {
    if (is_constant()) return constant_value().to_string();
    std::string n = num_.to_string();
    if (den_.is_constant()) return n;
    std::string d = den_.to_string();
    std::string den_part = is_atom(d) ? d + "^-1" : "(" + d + ")^-1";
    if (n == "1") return den_part;
    if (n == "-1") return "-" + den_part;
    if (has_top_level_sum(n)) n = "(" + n + ")";
    return n + "*" + den_part;
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.to_string(); }

}  // namespace sge
