#include "sge/trig.hpp"

#include <sstream>

namespace sge {

namespace {

ParamPoly one(const VarSet& vars) { return ParamPoly::constant(vars, GaussianRational(1)); }

std::string trig_monomial(int a, int b) {
    std::string out;
    if (a == 1) out = "s";
    else if (a > 1) out = "s^" + std::to_string(a);
    if (b > 0) {
        if (!out.empty()) out += "*";
        out += b == 1 ? "c" : "c^" + std::to_string(b);
    }
    return out;
}

}  // namespace

TrigPoly TrigPoly::constant(VarSet vars, const ParamPoly& c) {
    TrigPoly p(std::move(vars));
    p.add_raw(0, 0, c);
    return p;
}

TrigPoly TrigPoly::s(VarSet vars) {
    TrigPoly p(vars);
    p.add_raw(1, 0, one(vars));
    return p;
}

TrigPoly TrigPoly::c(VarSet vars) {
    TrigPoly p(vars);
    p.add_raw(0, 1, one(vars));
    return p;
}

bool TrigPoly::is_normal() const {
    for (const auto& [k, v] : terms_)
        if (k.first > 1) return false;
    return true;
}

ParamPoly TrigPoly::coefficient(int a, int b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? ParamPoly(vars_) : it->second;
}

void TrigPoly::add_raw(int a, int b, const ParamPoly& coeff) {
    if (a < 0 || b < 0) throw std::invalid_argument("negative trig exponent");
    if (coeff.is_zero()) return;
    if (!vars_) vars_ = coeff.vars();
    auto [it, inserted] = terms_.try_emplace({a, b}, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
    for (const auto& [k, v] : o.terms_) add_raw(k.first, k.second, v);
    return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
    for (const auto& [k, v] : o.terms_) add_raw(k.first, k.second, -v);
    return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out(a.vars_ ? a.vars_ : b.vars_);
    for (const auto& [ka, va] : a.terms_)
        for (const auto& [kb, vb] : b.terms_) out.add_raw(ka.first + kb.first, ka.second + kb.second, va * vb);
    return trig_normalize(out);
}

TrigPoly TrigPoly::scaled(const ParamPoly& k) const {
    TrigPoly out(vars_);
    for (const auto& [key, v] : terms_) out.add_raw(key.first, key.second, v * k);
    return out;
}

TrigPoly TrigPoly::pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative trig power");
    TrigPoly out = constant(vars_, one(vars_));
    for (int j = 0; j < k; ++j) out = out * *this;
    return out;
}

std::complex<double> TrigPoly::evaluate(std::complex<double> s, std::complex<double> c,
                                        const std::vector<std::complex<double>>& values) const {
    std::complex<double> sum = 0;
    for (const auto& [k, v] : terms_) {
        std::complex<double> t = sge::evaluate(v, values);
        for (int j = 0; j < k.first; ++j) t *= s;
        for (int j = 0; j < k.second; ++j) t *= c;
        sum += t;
    }
    return sum;
}

std::string TrigPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<std::string, std::string>> parts;
    for (const auto& [k, v] : terms_) parts.emplace_back(v.to_string(), trig_monomial(k.first, k.second));
    return detail::join_terms(parts);
}

TrigPoly trig_normalize(const TrigPoly& p) {
    TrigPoly out(p.vars());
    // s^a c^b = s^(a-2) c^b - s^(a-2) c^(b+2), applied until a <= 1
    std::map<TrigPoly::Key, ParamPoly> work = p.terms();
    while (!work.empty()) {
        auto it = std::prev(work.end());
        auto [key, v] = *it;
        work.erase(it);
        if (key.first <= 1) {
            out.add_raw(key.first, key.second, v);
            continue;
        }
        for (auto [nk, nv] : {std::pair{TrigPoly::Key{key.first - 2, key.second}, v},
                              std::pair{TrigPoly::Key{key.first - 2, key.second + 2}, -v}}) {
            auto [w, inserted] = work.try_emplace(nk, nv);
            if (!inserted) {
                w->second += nv;
                if (w->second.is_zero()) work.erase(w);
            }
        }
    }
    return out;
}

TrigPoly trig_diff(const TrigPoly& p) {
    TrigPoly raw(p.vars());
    for (const auto& [k, v] : p.terms()) {
        auto [a, b] = k;
        // (s^a)' = a s^a c,  (c^b)' = -b s^2 c^(b-1)
        if (a > 0) raw.add_raw(a, b + 1, v.scaled(GaussianRational(a)));
        if (b > 0) raw.add_raw(a + 2, b - 1, v.scaled(GaussianRational(-b)));
    }
    return trig_normalize(raw);
}

Ansatz::Ansatz(int n, const std::vector<std::string>& parameters, const std::string& speed)
    : n_(n), speed_(speed), parameters_(parameters), cache_(std::make_shared<std::vector<TrigPoly>>()) {
    if (n < 1) throw std::invalid_argument("ansatz order must be at least 1");
    for (int j = n; j >= 1; --j) {
        unknowns_.push_back("A" + std::to_string(j));
        unknowns_.push_back("B" + std::to_string(j));
    }
    unknowns_.push_back("A0");
    unknowns_.push_back(speed);
    std::vector<std::string> all = unknowns_;
    all.insert(all.end(), parameters.begin(), parameters.end());
    vars_ = make_vars(all);

    TrigPoly body = TrigPoly::constant(vars_, ParamPoly::variable(vars_, "A0"));
    for (int j = 1; j <= n; ++j) {
        body.add_raw(0, j, ParamPoly::variable(vars_, "A" + std::to_string(j)));
        body.add_raw(1, j - 1, ParamPoly::variable(vars_, "B" + std::to_string(j)));
    }
    cache_->push_back(body);
}

const TrigPoly& Ansatz::derivative(int k) const {
    if (k < 0) throw std::invalid_argument("negative derivative order");
    while (static_cast<int>(cache_->size()) <= k) cache_->push_back(trig_diff(cache_->back()));
    return (*cache_)[k];
}

Ansatz build_ansatz(int n, const std::vector<std::string>& parameters, const std::string& speed) {
    return Ansatz(n, parameters, speed);
}

TrigPoly substitute_ansatz(const DerivPoly& ode, const Ansatz& a) {
    TrigPoly out(a.vars());
    for (const auto& [key, coeff] : ode.terms()) {
        TrigPoly term = TrigPoly::constant(a.vars(), coeff.reindex(a.vars()));
        for (std::size_t k = 0; k < key.size(); ++k)
            if (key[k] > 0) term = term * a.derivative(static_cast<int>(k)).pow(key[k]);
        out += term;
    }
    return out;
}

std::vector<SysPoly> PolySystem::polys() const {
    std::vector<SysPoly> out;
    for (const auto& e : equations) out.push_back(e.poly);
    return out;
}

SysPoly to_system_poly(const ParamPoly& p, const VarSet& unknowns, const VarSet& field) {
    const auto& names = *p.vars();
    std::vector<int> unknown_slot(names.size(), -1), field_slot(names.size(), -1);
    for (std::size_t k = 0; k < names.size(); ++k) {
        unknown_slot[k] = var_index(unknowns, names[k]);
        field_slot[k] = var_index(field, names[k]);
        if (unknown_slot[k] < 0 && field_slot[k] < 0)
            throw std::invalid_argument("variable '" + names[k] + "' belongs to neither unknowns nor parameters");
    }
    SysPoly out(unknowns);
    for (const auto& [e, c] : p.terms()) {
        Exponents mono(unknowns->size(), 0), param(field->size(), 0);
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (unknown_slot[k] >= 0) mono[unknown_slot[k]] = e[k];
            else param[field_slot[k]] = e[k];
        }
        ParamPoly coeff(field);
        coeff.add_term(param, c);
        out.add_term(mono, coeff.is_constant() ? RationalFunction(c) : RationalFunction(coeff));
    }
    return out;
}

PolySystem extract_coefficient_system(const TrigPoly& p, const Ansatz& a) {
    PolySystem sys;
    sys.unknowns = make_vars(a.unknowns());
    std::vector<std::string> field = a.parameters();
    field.insert(field.end(), a.unknowns().begin(), a.unknowns().end());
    sys.field = make_vars(field);
    TrigPoly q = trig_normalize(p);
    std::vector<TrigPoly::Key> keys;
    for (const auto& [k, v] : q.terms()) keys.push_back(k);
    std::sort(keys.begin(), keys.end(), [](const auto& x, const auto& y) {
        return x.second != y.second ? x.second < y.second : x.first < y.first;
    });
    for (const auto& k : keys)
        sys.equations.push_back({k.first, k.second, to_system_poly(q.terms().at(k), sys.unknowns, sys.field)});
    return sys;
}

namespace {

ParamPoly expr_to_poly(const Expr& e, const VarSet& vars) {
    switch (e.kind()) {
        case Expr::Kind::Const:
            return ParamPoly::constant(vars, e.value());
        case Expr::Kind::Symbol:
            return ParamPoly::variable(vars, e.name());
        case Expr::Kind::Sum: {
            ParamPoly out(vars);
            for (const auto& t : e.args()) out += expr_to_poly(t, vars);
            return out;
        }
        case Expr::Kind::Product: {
            ParamPoly out = one(vars);
            for (const auto& f : e.args()) out = out * expr_to_poly(f, vars);
            return out;
        }
        case Expr::Kind::Power:
            if (e.exponent() < 0) break;
            return expr_to_poly(e.args()[0], vars).pow(e.exponent());
        default:
            break;
    }
    throw std::invalid_argument("not a polynomial: " + e.to_string());
}

}  // namespace

SysPoly parse_system_poly(const std::string& text, const VarSet& unknowns, const VarSet& field) {
    std::vector<std::string> all = *unknowns;
    for (const auto& f : *field)
        if (var_index(unknowns, f) < 0) all.push_back(f);
    VarSet vars = make_vars(all);
    return to_system_poly(expr_to_poly(parse_expr(text), vars), unknowns, field);
}

}  // namespace sge
