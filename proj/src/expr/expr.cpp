#include "sge/expr.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sge {

struct Expr::Node {
    Kind kind = Kind::Const;
    GaussianRational value;
    std::string name;
    std::vector<Expr> args;
    int exponent = 0;
    Func func = Func::Sin;
    std::vector<std::string> coords;
};

namespace {

const char* const kFuncNames[] = {"sin", "cos",  "tan", "sinh",   "cosh", "tanh",
                                  "sech", "exp", "ln",  "arctan", "sqrt"};

}  // namespace

const char* func_name(Func f) { return kFuncNames[static_cast<int>(f)]; }

bool func_from_name(const std::string& name, Func& out) {
    for (int k = 0; k < 11; ++k) {
        if (name == kFuncNames[k]) {
            out = static_cast<Func>(k);
            return true;
        }
    }
    return false;
}

Expr::Expr() : Expr(constant(GaussianRational(0))) {}

Expr Expr::constant(GaussianRational value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->value = std::move(value);
    return Expr(std::move(n));
}

Expr Expr::symbol(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Symbol;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    n->args = std::move(terms);
    return Expr(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Product;
    n->args = std::move(factors);
    return Expr(std::move(n));
}

Expr Expr::power(Expr base, int exponent) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Power;
    n->args = {std::move(base)};
    n->exponent = exponent;
    return Expr(std::move(n));
}

Expr Expr::call(Func f, Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->func = f;
    n->args = {std::move(arg)};
    return Expr(std::move(n));
}

Expr Expr::deriv(std::string fn, std::vector<std::string> coords) {
    if (coords.empty()) throw std::invalid_argument("derivative node needs at least one coordinate");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Deriv;
    n->name = std::move(fn);
    n->coords = std::move(coords);
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const GaussianRational& Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
const std::vector<Expr>& Expr::args() const { return node_->args; }
int Expr::exponent() const { return node_->exponent; }
Func Expr::func() const { return node_->func; }
const std::vector<std::string>& Expr::coords() const { return node_->coords; }

bool operator==(const Expr& a, const Expr& b) { return a.node_ == b.node_ || compare(a, b) == 0; }

int compare(const Expr& a, const Expr& b) {
    if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
    auto cmp = [](const auto& x, const auto& y) { return x < y ? -1 : (y < x ? 1 : 0); };
    switch (a.kind()) {
        case Expr::Kind::Const: {
            auto c = a.value() <=> b.value();
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
        case Expr::Kind::Symbol:
            return cmp(a.name(), b.name());
        case Expr::Kind::Deriv:
            if (int c = cmp(a.name(), b.name())) return c;
            return cmp(a.coords(), b.coords());
        case Expr::Kind::Call:
            if (a.func() != b.func()) return static_cast<int>(a.func()) < static_cast<int>(b.func()) ? -1 : 1;
            return compare(a.args()[0], b.args()[0]);
        case Expr::Kind::Power:
            if (int c = compare(a.args()[0], b.args()[0])) return c;
            return cmp(a.exponent(), b.exponent());
        case Expr::Kind::Sum:
        case Expr::Kind::Product: {
            const auto& x = a.args();
            const auto& y = b.args();
            for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k)
                if (int c = compare(x[k], y[k])) return c;
            return cmp(x.size(), y.size());
        }
    }
    return 0;
}

namespace {

GaussianRational int_pow(const GaussianRational& c, int n) {
    GaussianRational base = n < 0 ? c.inverse() : c;
    GaussianRational out(1);
    for (int k = 0; k < std::abs(n); ++k) out *= base;
    return out;
}

/// Splits a canonical term into numeric coefficient and the remaining factor.
std::pair<GaussianRational, Expr> split_coefficient(const Expr& term) {
    if (term.kind() == Expr::Kind::Const) return {term.value(), Expr::constant(GaussianRational(1))};
    if (term.kind() != Expr::Kind::Product) return {GaussianRational(1), term};
    const auto& f = term.args();
    if (!f.empty() && f[0].is_constant()) {
        std::vector<Expr> rest(f.begin() + 1, f.end());
        return {f[0].value(), rest.size() == 1 ? rest[0] : Expr::product(std::move(rest))};
    }
    return {GaussianRational(1), term};
}

/// Splits a canonical factor into (base, exponent).
std::pair<Expr, int> split_power(const Expr& factor) {
    if (factor.kind() == Expr::Kind::Power) return {factor.args()[0], factor.exponent()};
    return {factor, 1};
}

Expr make_power(const Expr& base, int n);
Expr make_sum(const std::vector<Expr>& terms);

Expr make_product(const std::vector<Expr>& factors) {
    GaussianRational coeff(1);
    std::vector<std::pair<Expr, int>> powers;
    auto absorb = [&](const Expr& f, auto& self) -> void {
        if (f.kind() == Expr::Kind::Const) {
            coeff *= f.value();
        } else if (f.kind() == Expr::Kind::Product) {
            for (const auto& g : f.args()) self(g, self);
        } else {
            auto [base, n] = split_power(f);
            for (auto& [b, m] : powers) {
                if (b == base) {
                    m += n;
                    return;
                }
            }
            powers.emplace_back(base, n);
        }
    };
    for (const auto& f : factors) absorb(f, absorb);
    if (coeff.is_zero()) return Expr::constant(GaussianRational(0));
    std::vector<Expr> rest;
    for (const auto& [b, m] : powers) {
        Expr p = make_power(b, m);
        if (p.is_constant()) coeff *= p.value();
        else if (p.kind() == Expr::Kind::Product) {
            for (const auto& g : p.args()) {
                if (g.is_constant()) coeff *= g.value();
                else rest.push_back(g);
            }
        } else {
            rest.push_back(p);
        }
    }
    std::sort(rest.begin(), rest.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
    if (rest.empty()) return Expr::constant(coeff);
    if (coeff.is_one() && rest.size() == 1) return rest[0];
    if (rest.size() == 1 && rest[0].kind() == Expr::Kind::Sum) {
        // c * (a + b)  ->  c*a + c*b
        std::vector<Expr> terms;
        for (const auto& t : rest[0].args()) terms.push_back(make_product({Expr::constant(coeff), t}));
        return make_sum(terms);
    }
    if (!coeff.is_one()) rest.insert(rest.begin(), Expr::constant(coeff));
    return Expr::product(std::move(rest));
}

Expr make_power(const Expr& base, int n) {
    if (n == 0) return Expr::constant(GaussianRational(1));
    if (n == 1) return base;
    if (base.is_constant()) {
        if (base.value().is_zero() && n < 0) return Expr::power(base, n);
        return Expr::constant(int_pow(base.value(), n));
    }
    if (base.kind() == Expr::Kind::Power) return make_power(base.args()[0], base.exponent() * n);
    if (base.kind() == Expr::Kind::Product) {
        // (c * f)^n  ->  c^n * f^n keeps numeric coefficients out of powers
        auto [c, rest] = split_coefficient(base);
        if (!c.is_one()) return make_product({Expr::constant(int_pow(c, n)), make_power(rest, n)});
    }
    return Expr::power(base, n);
}

Expr make_sum(const std::vector<Expr>& terms) {
    GaussianRational constant(0);
    std::vector<std::pair<Expr, GaussianRational>> collected;
    auto absorb = [&](const Expr& t, auto& self) -> void {
        if (t.kind() == Expr::Kind::Sum) {
            for (const auto& u : t.args()) self(u, self);
            return;
        }
        auto [c, rest] = split_coefficient(t);
        if (rest.is_constant()) {
            constant += c * rest.value();
            return;
        }
        for (auto& [r, k] : collected) {
            if (r == rest) {
                k += c;
                return;
            }
        }
        collected.emplace_back(rest, c);
    };
    for (const auto& t : terms) absorb(t, absorb);
    std::sort(collected.begin(), collected.end(),
              [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
    std::vector<Expr> out;
    for (const auto& [r, c] : collected) {
        if (c.is_zero()) continue;
        out.push_back(make_product({Expr::constant(c), r}));
    }
    if (!constant.is_zero()) out.push_back(Expr::constant(constant));
    if (out.empty()) return Expr::constant(GaussianRational(0));
    if (out.size() == 1) return out[0];
    return Expr::sum(std::move(out));
}

}  // namespace

Expr canonical(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Const:
        case Expr::Kind::Symbol:
            return e;
        case Expr::Kind::Deriv: {
            auto coords = e.coords();
            std::sort(coords.begin(), coords.end());
            return Expr::deriv(e.name(), std::move(coords));
        }
        case Expr::Kind::Call:
            return Expr::call(e.func(), canonical(e.args()[0]));
        case Expr::Kind::Power:
            return make_power(canonical(e.args()[0]), e.exponent());
        case Expr::Kind::Product: {
            std::vector<Expr> f;
            for (const auto& a : e.args()) f.push_back(canonical(a));
            return make_product(f);
        }
        case Expr::Kind::Sum: {
            std::vector<Expr> t;
            for (const auto& a : e.args()) t.push_back(canonical(a));
            return make_sum(t);
        }
    }
    return e;
}

Expr operator+(const Expr& a, const Expr& b) { return make_sum({canonical(a), canonical(b)}); }
Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }
Expr operator*(const Expr& a, const Expr& b) { return make_product({canonical(a), canonical(b)}); }
Expr operator-(const Expr& a) { return make_product({Expr::constant(GaussianRational(-1)), canonical(a)}); }
Expr num(GaussianRational value) { return Expr::constant(std::move(value)); }
Expr sym(const std::string& name) { return Expr::symbol(name); }
Expr apply(Func f, const Expr& arg) { return Expr::call(f, canonical(arg)); }
Expr pow(const Expr& base, int exponent) { return make_power(canonical(base), exponent); }

namespace {

bool is_atomic(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Symbol:
        case Expr::Kind::Call:
        case Expr::Kind::Deriv:
            return true;
        case Expr::Kind::Const:
            return e.value().is_real() && e.value().re().sign() >= 0 && e.value().re().is_integer();
        default:
            return false;
    }
}

void render(const Expr& e, std::ostringstream& os);

void render_factor(const Expr& f, std::ostringstream& os) {
    if (f.kind() == Expr::Kind::Sum) {
        os << "(";
        render(f, os);
        os << ")";
    } else {
        render(f, os);
    }
}

std::string render_constant(const GaussianRational& c) {
    std::string s = c.to_string();
    if (s.find(' ') != std::string::npos) return "(" + s + ")";
    return s;
}

void render(const Expr& e, std::ostringstream& os) {
    switch (e.kind()) {
        case Expr::Kind::Const:
            os << render_constant(e.value());
            return;
        case Expr::Kind::Symbol:
            os << e.name();
            return;
        case Expr::Kind::Deriv:
            os << "D(" << e.name();
            for (const auto& c : e.coords()) os << "," << c;
            os << ")";
            return;
        case Expr::Kind::Call:
            os << func_name(e.func()) << "(";
            render(e.args()[0], os);
            os << ")";
            return;
        case Expr::Kind::Power: {
            const Expr& b = e.args()[0];
            if (is_atomic(b)) render(b, os);
            else {
                os << "(";
                render(b, os);
                os << ")";
            }
            os << "^" << e.exponent();
            return;
        }
        case Expr::Kind::Product: {
            const auto& f = e.args();
            std::size_t start = 0;
            if (!f.empty() && f[0].is_constant()) {
                const GaussianRational& c = f[0].value();
                if (c == GaussianRational(-1)) os << "-";
                else if (!c.is_one()) os << render_constant(c) << "*";
                start = 1;
            }
            for (std::size_t k = start; k < f.size(); ++k) {
                if (k > start) os << "*";
                render_factor(f[k], os);
            }
            return;
        }
        case Expr::Kind::Sum: {
            bool first = true;
            for (const auto& t : e.args()) {
                std::ostringstream ts;
                render(t, ts);
                std::string s = ts.str();
                if (first) os << s;
                else if (!s.empty() && s[0] == '-') os << " - " << s.substr(1);
                else os << " + " << s;
                first = false;
            }
            return;
        }
    }
}

}  // namespace

std::string Expr::to_string() const {
    std::ostringstream os;
    render(*this, os);
    return os.str();
}

Expr substitute(const Expr& e, const std::string& symbol, const Expr& replacement) {
    std::vector<std::string> none;
    auto rebuilt = [&](const Expr& x, auto& self) -> Expr {
        switch (x.kind()) {
            case Expr::Kind::Const:
            case Expr::Kind::Deriv:
                return x;
            case Expr::Kind::Symbol:
                return x.name() == symbol ? replacement : x;
            case Expr::Kind::Sum:
            case Expr::Kind::Product: {
                std::vector<Expr> args;
                for (const auto& a : x.args()) args.push_back(self(a, self));
                return x.kind() == Expr::Kind::Sum ? Expr::sum(std::move(args)) : Expr::product(std::move(args));
            }
            case Expr::Kind::Power:
                return Expr::power(self(x.args()[0], self), x.exponent());
            case Expr::Kind::Call:
                return Expr::call(x.func(), self(x.args()[0], self));
        }
        return x;
    };
    return canonical(rebuilt(e, rebuilt));
}

std::vector<std::string> free_symbols(const Expr& e) {
    std::set<std::string> out;
    auto walk = [&](const Expr& x, auto& self) -> void {
        if (x.kind() == Expr::Kind::Symbol) out.insert(x.name());
        for (const auto& a : x.args()) self(a, self);
    };
    walk(e, walk);
    return {out.begin(), out.end()};
}

bool contains_deriv(const Expr& e) {
    if (e.kind() == Expr::Kind::Deriv) return true;
    for (const auto& a : e.args())
        if (contains_deriv(a)) return true;
    return false;
}

}  // namespace sge
