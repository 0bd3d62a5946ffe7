#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sge {

/// Ordered, immutable list of variable names shared by polynomials.
using VarSet = std::shared_ptr<const std::vector<std::string>>;

VarSet make_vars(std::vector<std::string> names);
bool same_vars(const VarSet& a, const VarSet& b);
/// Index of `name` in `vars`, or -1.
int var_index(const VarSet& vars, const std::string& name);

/// Exponent vector; entry k is the power of variable k.
using Exponents = std::vector<int>;

/// True when a divides b componentwise.
bool divides(const Exponents& a, const Exponents& b);
Exponents lcm(const Exponents& a, const Exponents& b);
Exponents operator+(const Exponents& a, const Exponents& b);
Exponents operator-(const Exponents& a, const Exponents& b);
int total_degree(const Exponents& e);

namespace detail {
std::string join_terms(const std::vector<std::pair<std::string, std::string>>& coeff_and_monomial);
std::string monomial_string(const std::vector<std::string>& names, const Exponents& e);
}  // namespace detail

/// Sparse multivariate polynomial over a coefficient field C.
///
/// Terms are kept in a map ordered lexicographically on exponent vectors
/// (variable 0 most significant), so the leading term under lex is the last
/// entry. No zero coefficient is ever stored.
template <class C>
class Polynomial {
public:
    using Terms = std::map<Exponents, C>;

    Polynomial() = default;
    explicit Polynomial(VarSet vars) : vars_(std::move(vars)) {}

    static Polynomial constant(VarSet vars, C value) {
        Polynomial p(std::move(vars));
        p.add_term(Exponents(p.arity(), 0), std::move(value));
        return p;
    }
    static Polynomial variable(VarSet vars, std::size_t index, int power = 1) {
        Polynomial p(std::move(vars));
        Exponents e(p.arity(), 0);
        e.at(index) = power;
        p.add_term(std::move(e), C(1));
        return p;
    }
    static Polynomial variable(const VarSet& vars, const std::string& name) {
        int k = var_index(vars, name);
        if (k < 0) throw std::invalid_argument("unknown variable '" + name + "'");
        return variable(vars, static_cast<std::size_t>(k));
    }

    const VarSet& vars() const { return vars_; }
    std::size_t arity() const { return vars_ ? vars_->size() : 0; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && sge::total_degree(terms_.begin()->first) == 0);
    }
    C constant_term() const {
        auto it = terms_.find(Exponents(arity(), 0));
        return it == terms_.end() ? C(0) : it->second;
    }

    /// Accumulates c * x^e, dropping the entry if it cancels.
    void add_term(const Exponents& e, const C& c) {
        if (e.size() != arity()) throw std::invalid_argument("exponent arity mismatch");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const Exponents& leading_monomial() const { return require_nonzero().rbegin()->first; }
    const C& leading_coeff() const { return require_nonzero().rbegin()->second; }

    int degree(std::size_t var) const {
        int d = terms_.empty() ? -1 : 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }
    int total_degree() const {
        int d = terms_.empty() ? -1 : 0;
        for (const auto& [e, c] : terms_) d = std::max(d, sge::total_degree(e));
        return d;
    }
    bool uses(std::size_t var) const {
        for (const auto& [e, c] : terms_)
            if (e[var] > 0) return true;
        return false;
    }
    std::vector<std::size_t> used_vars() const {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < arity(); ++k)
            if (uses(k)) out.push_back(k);
        return out;
    }

    Polynomial operator-() const {
        Polynomial out(vars_);
        for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, -c);
        return out;
    }
    Polynomial& operator+=(const Polynomial& o) {
        adopt_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        adopt_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out(a.vars_ ? a.vars_ : b.vars_);
        out.check_vars(b);
        out.check_vars(a);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
        return out;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial scaled(const C& c) const {
        Polynomial out(vars_);
        if (c.is_zero()) return out;
        for (const auto& [e, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, v * c);
        return out;
    }
    /// Multiplies by c * x^e.
    Polynomial mul_term(const Exponents& m, const C& c) const {
        Polynomial out(vars_);
        if (c.is_zero()) return out;
        for (const auto& [e, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + m, v * c);
        return out;
    }
    Polynomial pow(int k) const {
        if (k < 0) throw std::invalid_argument("negative polynomial power");
        Polynomial out = constant(vars_, C(1));
        for (int j = 0; j < k; ++j) out = out * *this;
        return out;
    }

    Polynomial derivative(std::size_t var) const {
        Polynomial out(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents d = e;
            d[var] -= 1;
            out.add_term(d, c * C(e[var]));
        }
        return out;
    }

    /// Replaces variable `var` by the polynomial `value` (same variable set).
    Polynomial substitute(std::size_t var, const Polynomial& value) const {
        check_vars(value);
        Polynomial out(vars_);
        std::vector<Polynomial> powers{constant(vars_, C(1))};
        for (const auto& [e, c] : terms_) {
            while (static_cast<int>(powers.size()) <= e[var]) powers.push_back(powers.back() * value);
            Exponents rest = e;
            rest[var] = 0;
            out += powers[e[var]].mul_term(rest, c);
        }
        return out;
    }

    /// Re-expresses the polynomial over `target`, matching variables by name.
    /// Every variable actually used must exist in `target`.
    Polynomial reindex(const VarSet& target) const {
        std::vector<int> map(arity());
        for (std::size_t k = 0; k < arity(); ++k) map[k] = var_index(target, (*vars_)[k]);
        Polynomial out(target);
        for (const auto& [e, c] : terms_) {
            Exponents f(target->size(), 0);
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                if (map[k] < 0) throw std::invalid_argument("variable '" + (*vars_)[k] + "' absent from target set");
                f[map[k]] = e[k];
            }
            out.add_term(f, c);
        }
        return out;
    }

    /// Coefficients as a univariate polynomial in `var`: result[k] multiplies var^k.
    std::vector<Polynomial> coefficients_in(std::size_t var) const {
        std::vector<Polynomial> out(std::max(degree(var), 0) + 1, Polynomial(vars_));
        for (const auto& [e, c] : terms_) {
            Exponents rest = e;
            rest[var] = 0;
            out[e[var]].add_term(rest, c);
        }
        return out;
    }

    template <class F>
    auto map_coeffs(F&& f) const {
        using D = decltype(f(std::declval<const C&>()));
        Polynomial<D> out(vars_);
        for (const auto& [e, c] : terms_) out.add_term(e, f(c));
        return out;
    }

    /// Horner-free evaluation; `values[k]` binds variable k. V must accept C via `lift`.
    template <class V, class Lift>
    V evaluate(const std::vector<V>& values, Lift&& lift) const {
        V sum = lift(C(0));
        for (const auto& [e, c] : terms_) {
            V term = lift(c);
            for (std::size_t k = 0; k < e.size(); ++k)
                for (int j = 0; j < e[k]; ++j) term = term * values[k];
            sum = sum + term;
        }
        return sum;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.terms_.empty() && b.terms_.empty()) return true;
        return same_vars(a.vars_, b.vars_) && a.terms_ == b.terms_;
    }

    /// Render as "3*A0^2 + 4*A0*v - 2", leading (lex-largest) term first.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<std::string, std::string>> parts;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
            parts.emplace_back(it->second.to_string(), detail::monomial_string(*vars_, it->first));
        return detail::join_terms(parts);
    }

    void check_vars(const Polynomial& o) const {
        if (!o.vars_ || !vars_) return;
        if (!same_vars(vars_, o.vars_)) throw std::invalid_argument("polynomials over different variable sets");
    }

private:
    const Terms& require_nonzero() const {
        if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
        return terms_;
    }
    void adopt_vars(const Polynomial& o) {
        if (!vars_) vars_ = o.vars_;
        check_vars(o);
    }

    VarSet vars_;
    Terms terms_;
};

/// Multivariate division by a list of divisors under lex order.
/// Returns the remainder; no monomial of it is divisible by a divisor's leading monomial.
template <class C>
Polynomial<C> reduce(Polynomial<C> p, const std::vector<Polynomial<C>>& divisors) {
    Polynomial<C> rem(p.vars());
    while (!p.is_zero()) {
        const Exponents lm = p.leading_monomial();
        const C lc = p.leading_coeff();
        bool divided = false;
        for (const auto& g : divisors) {
            if (g.is_zero() || !divides(g.leading_monomial(), lm)) continue;
            p -= g.mul_term(lm - g.leading_monomial(), lc / g.leading_coeff());
            divided = true;
            break;
        }
        if (!divided) {
            rem.add_term(lm, lc);
            p.add_term(lm, -lc);
        }
    }
    return rem;
}

/// Exact quotient a / b; throws std::domain_error when b does not divide a.
template <class C>
Polynomial<C> divide_exact(Polynomial<C> a, const Polynomial<C>& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Polynomial<C> q(a.vars() ? a.vars() : b.vars());
    const Exponents& lb = b.leading_monomial();
    const C& cb = b.leading_coeff();
    while (!a.is_zero()) {
        const Exponents lm = a.leading_monomial();
        if (!divides(lb, lm)) throw std::domain_error("inexact polynomial division");
        Exponents m = lm - lb;
        C c = a.leading_coeff() / cb;
        a -= b.mul_term(m, c);
        q.add_term(m, c);
    }
    return q;
}

template <class C>
Polynomial<C> make_monic(const Polynomial<C>& p) {
    if (p.is_zero()) return p;
    return p.scaled(C(1) / p.leading_coeff());
}

namespace detail {

template <class C>
Polynomial<C> content_in(const Polynomial<C>& p, std::size_t var);

template <class C>
Polynomial<C> gcd_impl(const Polynomial<C>& a, const Polynomial<C>& b) {
    if (a.is_zero()) return make_monic(b);
    if (b.is_zero()) return make_monic(a);
    if (a.is_constant() || b.is_constant()) return Polynomial<C>::constant(a.vars(), C(1));
    // main variable: the most significant one used by either operand
    std::size_t var = a.arity();
    for (std::size_t k = 0; k < a.arity(); ++k)
        if (a.uses(k) || b.uses(k)) { var = k; break; }
    if (!a.uses(var)) return gcd_impl(a, content_in(b, var));
    if (!b.uses(var)) return gcd_impl(content_in(a, var), b);

    Polynomial<C> ca = content_in(a, var), cb = content_in(b, var);
    Polynomial<C> f = divide_exact(a, ca), g = divide_exact(b, cb);
    Polynomial<C> c = gcd_impl(ca, cb);
    if (f.degree(var) < g.degree(var)) std::swap(f, g);
    // primitive pseudo-remainder sequence in `var`
    while (!g.is_zero() && g.uses(var)) {
        auto fc = f.coefficients_in(var);
        const int dg = g.degree(var);
        Polynomial<C> lg = g.coefficients_in(var).back();
        Polynomial<C> r = f;
        while (!r.is_zero() && r.degree(var) >= dg) {
            auto rc = r.coefficients_in(var);
            Exponents shift(r.arity(), 0);
            shift[var] = r.degree(var) - dg;
            r = r * lg - g.mul_term(shift, C(1)) * rc.back();
        }
        f = std::move(g);
        if (r.is_zero()) {
            g = Polynomial<C>(f.vars());
            break;
        }
        g = divide_exact(r, content_in(r, var));
    }
    Polynomial<C> h = g.is_zero() ? f : Polynomial<C>::constant(a.vars(), C(1));
    if (!h.is_constant()) h = divide_exact(h, content_in(h, var));
    return make_monic(h * c);
}

template <class C>
Polynomial<C> content_in(const Polynomial<C>& p, std::size_t var) {
    Polynomial<C> g(p.vars());
    for (const auto& coeff : p.coefficients_in(var)) {
        if (coeff.is_zero()) continue;
        g = gcd_impl(g, coeff);
        if (g.is_constant()) break;
    }
    return g.is_zero() ? Polynomial<C>::constant(p.vars(), C(1)) : make_monic(g);
}

}  // namespace detail

/// Monic greatest common divisor (gcd(0, 0) = 0).
template <class C>
Polynomial<C> gcd(const Polynomial<C>& a, const Polynomial<C>& b) {
    a.check_vars(b);
    return detail::gcd_impl(a, b);
}

/// Exact square root S with S^2 = p when p is a perfect square whose leading
/// coefficient has a square root in C (via `coeff_sqrt`).
template <class C, class CoeffSqrt>
std::optional<Polynomial<C>> sqrt_exact(const Polynomial<C>& p, CoeffSqrt&& coeff_sqrt) {
    if (p.is_zero()) return p;
    const Exponents& lm = p.leading_monomial();
    Exponents half(lm.size());
    for (std::size_t k = 0; k < lm.size(); ++k) {
        if (lm[k] % 2) return std::nullopt;
        half[k] = lm[k] / 2;
    }
    std::optional<C> lc = coeff_sqrt(p.leading_coeff());
    if (!lc) return std::nullopt;
    Polynomial<C> root(p.vars());
    root.add_term(half, *lc);
    Polynomial<C> rest = p - root * root;
    const C two_lc = *lc + *lc;
    // each step fixes the next-lower term of the root
    for (std::size_t guard = 0; !rest.is_zero() && guard < 100000; ++guard) {
        const Exponents& rl = rest.leading_monomial();
        if (!divides(half, rl)) return std::nullopt;
        Exponents m = rl - half;
        if (!(m < half)) return std::nullopt;
        C c = rest.leading_coeff() / two_lc;
        Polynomial<C> t(p.vars());
        t.add_term(m, c);
        rest -= (root + root + t) * t;
        root += t;
    }
    if (!rest.is_zero()) return std::nullopt;
    return root;
}

}  // namespace sge
