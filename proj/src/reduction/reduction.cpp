#include "sge/reduction.hpp"

#include <algorithm>

namespace sge {

ParamPoly WaveFrame::multiplier(const std::string& coord, const VarSet& vars) const {
    for (const auto& [name, k] : spatial)
        if (name == coord) return ParamPoly::constant(vars, GaussianRational(k));
    if (!time.empty() && coord == time) return -ParamPoly::variable(vars, speed);
    throw ReductionError("coordinate '" + coord + "' is not part of the wave frame");
}

Expr WaveFrame::eta() const {
    Expr out = num(0);
    for (const auto& [name, k] : spatial) out = out + num(GaussianRational(k)) * sym(name);
    if (!time.empty()) out = out - sym(speed) * sym(time);
    return canonical(out);
}

void WaveFrame::validate() const {
    bool any = false;
    for (const auto& [name, k] : spatial) any = any || !k.is_zero();
    if (!any) throw ReductionError("wave frame needs a nonzero spatial coefficient");
    if (speed.empty()) throw ReductionError("wave frame needs a speed symbol");
}

namespace {

void trim(DerivPoly::Key& k) {
    while (!k.empty() && k.back() == 0) k.pop_back();
}

}  // namespace

DerivPoly DerivPoly::constant(VarSet vars, std::string fn, const ParamPoly& c) {
    DerivPoly out(std::move(vars), std::move(fn));
    out.add_term({}, c);
    return out;
}

DerivPoly DerivPoly::derivative(VarSet vars, std::string fn, int order) {
    if (order < 0) throw std::invalid_argument("negative derivative order");
    DerivPoly out(vars, std::move(fn));
    Key k(order + 1, 0);
    k[order] = 1;
    out.add_term(k, ParamPoly::constant(vars, GaussianRational(1)));
    return out;
}

void DerivPoly::add_term(Key key, const ParamPoly& c) {
    if (c.is_zero()) return;
    trim(key);
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DerivPoly& DerivPoly::operator+=(const DerivPoly& o) {
    if (!vars_) vars_ = o.vars_;
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

DerivPoly operator*(const DerivPoly& a, const DerivPoly& b) {
    DerivPoly out(a.vars_ ? a.vars_ : b.vars_, a.fn_);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            DerivPoly::Key k(std::max(ka.size(), kb.size()), 0);
            for (std::size_t j = 0; j < ka.size(); ++j) k[j] += ka[j];
            for (std::size_t j = 0; j < kb.size(); ++j) k[j] += kb[j];
            out.add_term(std::move(k), ca * cb);
        }
    }
    return out;
}

DerivPoly DerivPoly::scaled(const ParamPoly& c) const {
    DerivPoly out(vars_, fn_);
    for (const auto& [k, v] : terms_) out.add_term(k, v * c);
    return out;
}

DerivPoly DerivPoly::pow(int k) const {
    if (k < 0) throw ReductionError("negative power of the dependent variable");
    DerivPoly out = constant(vars_, fn_, ParamPoly::constant(vars_, GaussianRational(1)));
    for (int j = 0; j < k; ++j) out = out * *this;
    return out;
}

DerivPoly DerivPoly::d_eta() const {
    DerivPoly out(vars_, fn_);
    for (const auto& [k, c] : terms_) {
        for (std::size_t j = 0; j < k.size(); ++j) {
            if (k[j] == 0) continue;
            Key next = k;
            if (next.size() == j + 1) next.push_back(0);
            next[j] -= 1;
            next[j + 1] += 1;
            out.add_term(next, c.scaled(GaussianRational(k[j])));
        }
    }
    return out;
}

DerivPoly DerivPoly::renamed(std::string fn) const {
    DerivPoly out = *this;
    out.fn_ = std::move(fn);
    return out;
}

int DerivPoly::max_order() const {
    int m = -1;
    for (const auto& [k, c] : terms_) m = std::max(m, static_cast<int>(k.size()) - 1);
    return m;
}

int DerivPoly::min_order() const {
    int m = -1;
    for (const auto& [k, c] : terms_) {
        for (std::size_t j = 0; j < k.size(); ++j) {
            if (k[j] == 0) continue;
            if (m < 0 || static_cast<int>(j) < m) m = static_cast<int>(j);
            break;
        }
    }
    return m;
}

int DerivPoly::degree(const Key& k) {
    int d = 0;
    for (int m : k) d += m;
    return d;
}

int DerivPoly::order_sum(const Key& k) {
    int s = 0;
    for (std::size_t j = 0; j < k.size(); ++j) s += static_cast<int>(j) * k[j];
    return s;
}

std::string DerivPoly::key_string(const std::string& fn, const Key& k) {
    std::string out;
    for (std::size_t j = 0; j < k.size(); ++j) {
        if (k[j] == 0) continue;
        if (!out.empty()) out += "*";
        out += fn + std::string(j, '\'');
        if (k[j] > 1) out += "^" + std::to_string(k[j]);
    }
    return out;
}

std::string DerivPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const Key*> order;
    for (const auto& [k, c] : terms_) order.push_back(&k);
    std::stable_sort(order.begin(), order.end(), [](const Key* a, const Key* b) {
        if (a->size() != b->size()) return a->size() > b->size();
        if (degree(*a) != degree(*b)) return degree(*a) > degree(*b);
        return *a > *b;
    });
    std::vector<std::pair<std::string, std::string>> parts;
    for (const Key* k : order) parts.emplace_back(terms_.at(*k).to_string(), key_string(fn_, *k));
    return detail::join_terms(parts);
}

namespace {

struct Reducer {
    const std::string& dependent;
    const WaveFrame& frame;
    const VarSet& vars;

    DerivPoly one(const ParamPoly& c) const { return DerivPoly::constant(vars, "U", c); }

    DerivPoly run(const Expr& e) const {
        switch (e.kind()) {
            case Expr::Kind::Const:
                return one(ParamPoly::constant(vars, e.value()));
            case Expr::Kind::Symbol: {
                if (e.name() == dependent) return DerivPoly::derivative(vars, "U", 0);
                if (var_index(vars, e.name()) >= 0) return one(ParamPoly::variable(vars, e.name()));
                throw ReductionError("symbol '" + e.name() + "' is neither the dependent variable nor a parameter");
            }
            case Expr::Kind::Deriv: {
                if (e.name() != dependent)
                    throw ReductionError("derivative of '" + e.name() + "', expected '" + dependent + "'");
                ParamPoly c = ParamPoly::constant(vars, GaussianRational(1));
                for (const auto& coord : e.coords()) c = c * frame.multiplier(coord, vars);
                return DerivPoly::derivative(vars, "U", static_cast<int>(e.coords().size())).scaled(c);
            }
            case Expr::Kind::Sum: {
                DerivPoly out(vars, "U");
                for (const auto& t : e.args()) out += run(t);
                return out;
            }
            case Expr::Kind::Product: {
                DerivPoly out = one(ParamPoly::constant(vars, GaussianRational(1)));
                for (const auto& f : e.args()) out = out * run(f);
                return out;
            }
            case Expr::Kind::Power:
                if (e.exponent() < 0) throw ReductionError("non-polynomial term " + e.to_string());
                return run(e.args()[0]).pow(e.exponent());
            case Expr::Kind::Call:
                throw ReductionError("non-polynomial term " + e.to_string());
        }
        throw ReductionError("unsupported expression");
    }
};

}  // namespace

DerivPoly reduce_to_ode(const Expr& pde, const std::string& dependent, const WaveFrame& frame,
                        const VarSet& coeff_vars) {
    frame.validate();
    if (var_index(coeff_vars, frame.speed) < 0)
        throw ReductionError("speed symbol '" + frame.speed + "' missing from the coefficient variables");
    Reducer r{dependent, frame, coeff_vars};
    return r.run(canonical(pde));
}

DerivPoly integrate_once(const DerivPoly& ode) {
    DerivPoly out(ode.vars(), ode.function());
    for (const auto& [k, c] : ode.terms()) {
        const int d = DerivPoly::degree(k);
        const int top = static_cast<int>(k.size()) - 1;
        if (d == 1 && top >= 1) {
            DerivPoly::Key lower(top, 0);
            lower[top - 1] = 1;
            out.add_term(lower, c);
            continue;
        }
        if (d == 2 && top >= 1 && k[top] == 1 && k[top - 1] == 1) {
            DerivPoly::Key sq(top, 0);
            sq[top - 1] = 2;
            out.add_term(sq, c * ParamPoly::constant(ode.vars(), GaussianRational(Rational::normalize(1, 2))));
            continue;
        }
        throw NotIntegrable("term " + DerivPoly::key_string(ode.function(), k) + " is not integrable by pattern");
    }
    return out;
}

DerivPoly reduce_order(const DerivPoly& ode, const std::string& new_fn) {
    DerivPoly out(ode.vars(), new_fn);
    for (const auto& [k, c] : ode.terms()) {
        if (k.empty() || k[0] != 0)
            throw ReductionError("cannot set " + ode.function() + "' = " + new_fn + ": underived " +
                                 ode.function() + " present");
        out.add_term(DerivPoly::Key(k.begin() + 1, k.end()), c);
    }
    return out;
}

BalanceResult homogeneous_balance(const DerivPoly& ode) {
    const DerivPoly::Key* linear = nullptr;
    std::vector<const DerivPoly::Key*> nonlinear;
    for (const auto& [k, c] : ode.terms()) {
        const int d = DerivPoly::degree(k);
        if (d == 1 && k.size() > 1) {
            if (!linear || k.size() > linear->size()) linear = &k;
        } else if (d >= 2) {
            nonlinear.push_back(&k);
        }
    }
    if (nonlinear.empty()) throw MethodInapplicable("no nonlinear term to balance");
    if (!linear) throw MethodInapplicable("no linear derivative term to balance");
    const int top = static_cast<int>(linear->size()) - 1;
    // any nonlinear weight d*n + S >= 2n, so n <= top
    for (int n = 1; n <= top; ++n) {
        const DerivPoly::Key* best = nullptr;
        int best_w = -1;
        for (const auto* k : nonlinear) {
            int w = DerivPoly::degree(*k) * n + DerivPoly::order_sum(*k);
            if (w > best_w) {
                best_w = w;
                best = k;
            }
        }
        if (best_w == n + top) return {n, *linear, *best};
    }
    throw MethodInapplicable("homogeneous balance has no positive integer solution");
}

}  // namespace sge
