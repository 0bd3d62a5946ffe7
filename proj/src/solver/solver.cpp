#include "sge/solver.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace sge {

SysPoly TermOrder::apply(const SysPoly& p) const {
    if (!p.vars()) return p;
    if (*p.vars() == order) return p;
    return p.reindex(vars());
}

SysPoly s_polynomial(const SysPoly& f, const SysPoly& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("S-polynomial of zero");
    const Exponents l = lcm(f.leading_monomial(), g.leading_monomial());
    return f.mul_term(l - f.leading_monomial(), f.leading_coeff().inverse()) -
           g.mul_term(l - g.leading_monomial(), g.leading_coeff().inverse());
}

SysPoly normal_form_reduce(const SysPoly& p, const std::vector<SysPoly>& basis) { return reduce(p, basis); }

namespace {

bool coprime(const Exponents& a, const Exponents& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > 0 && b[k] > 0) return false;
    return true;
}

}  // namespace

GroebnerBasis buchberger(const std::vector<SysPoly>& system, const TermOrder& ord, std::size_t max_pairs) {
    GroebnerBasis out;
    out.order = ord;
    const VarSet vars = ord.vars();
    std::vector<SysPoly> g;
    for (const auto& p : system) {
        SysPoly q = ord.apply(p);
        if (q.is_zero()) continue;
        if (q.is_constant()) {
            out.basis = {SysPoly::constant(vars, RationalFunction(1))};
            return out;
        }
        g.push_back(make_monic(q));
    }

    using Pair = std::pair<std::size_t, std::size_t>;
    std::set<Pair> pending;
    for (std::size_t j = 1; j < g.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) pending.insert({i, j});
    auto lcm_of = [&](const Pair& p) { return lcm(g[p.first].leading_monomial(), g[p.second].leading_monomial()); };
    auto has = [&](std::size_t a, std::size_t b) { return pending.count({std::min(a, b), std::max(a, b)}) > 0; };

    while (!pending.empty()) {
        // normal selection: smallest lcm by total degree, then lex
        auto best = pending.begin();
        Exponents best_l = lcm_of(*best);
        for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
            Exponents l = lcm_of(*it);
            int dl = total_degree(l), db = total_degree(best_l);
            if (dl < db || (dl == db && l < best_l)) {
                best = it;
                best_l = std::move(l);
            }
        }
        const auto [i, j] = *best;
        pending.erase(best);
        if (coprime(g[i].leading_monomial(), g[j].leading_monomial())) continue;
        bool chain = false;
        for (std::size_t k = 0; k < g.size() && !chain; ++k) {
            if (k == i || k == j) continue;
            chain = divides(g[k].leading_monomial(), best_l) && !has(i, k) && !has(j, k);
        }
        if (chain) continue;
        if (++out.pairs_processed > max_pairs)
            throw SolverCapExceeded("Groebner basis exceeded the limit of " + std::to_string(max_pairs) +
                                    " critical pairs");
        SysPoly s = reduce(s_polynomial(g[i], g[j]), g);
        if (s.is_zero()) continue;
        if (s.is_constant()) {
            out.basis = {SysPoly::constant(vars, RationalFunction(1))};
            return out;
        }
        g.push_back(make_monic(s));
        for (std::size_t k = 0; k + 1 < g.size(); ++k) pending.insert({k, g.size() - 1});
    }

    // minimize, then inter-reduce
    std::vector<SysPoly> minimal;
    for (std::size_t a = 0; a < g.size(); ++a) {
        bool redundant = false;
        for (std::size_t b = 0; b < g.size() && !redundant; ++b) {
            if (a == b) continue;
            const Exponents& la = g[a].leading_monomial();
            const Exponents& lb = g[b].leading_monomial();
            redundant = divides(lb, la) && (la != lb || b < a);
        }
        if (!redundant) minimal.push_back(g[a]);
    }
    for (std::size_t a = 0; a < minimal.size(); ++a) {
        std::vector<SysPoly> others;
        for (std::size_t b = 0; b < minimal.size(); ++b)
            if (a != b) others.push_back(minimal[b]);
        SysPoly lead(vars);
        lead.add_term(minimal[a].leading_monomial(), minimal[a].leading_coeff());
        minimal[a] = make_monic(lead + reduce(minimal[a] - lead, others));
    }
    std::sort(minimal.begin(), minimal.end(),
              [](const SysPoly& x, const SysPoly& y) { return x.leading_monomial() < y.leading_monomial(); });
    out.basis = std::move(minimal);
    return out;
}

const Assignment* SolutionBranch::find(const std::string& unknown) const {
    for (const auto& [name, a] : assignment)
        if (name == unknown) return &a;
    return nullptr;
}

std::vector<std::string> SolutionBranch::free_unknowns() const {
    std::vector<std::string> out;
    for (const auto& [name, a] : assignment)
        if (a.is_free()) out.push_back(name);
    return out;
}

std::string SolutionBranch::key() const {
    std::string k;
    for (const auto& [name, a] : assignment) {
        k += name + "=";
        switch (a.kind) {
            case Assignment::Kind::Free: k += "FREE"; break;
            case Assignment::Kind::Open: k += "OPEN"; break;
            case Assignment::Kind::Value: k += a.value.to_string(); break;
        }
        k += ";";
    }
    for (const auto& r : residual) k += "|" + r.to_string();
    return k;
}

std::optional<RationalFunction> rf_sqrt(const RationalFunction& x) {
    if (x.is_zero()) return RationalFunction(0);
    auto gauss = [](const GaussianRational& c) { return c.sqrt(); };
    if (x.is_constant()) {
        auto r = x.constant_value().sqrt();
        if (!r) return std::nullopt;
        return RationalFunction(*r);
    }
    auto n = sqrt_exact(x.num(), gauss);
    if (!n) return std::nullopt;
    auto d = sqrt_exact(x.den(), gauss);
    if (!d) return std::nullopt;
    return RationalFunction(*n, *d);
}

namespace {

SysPoly var_poly(const VarSet& vars, std::size_t k) { return SysPoly::variable(vars, k); }

SysPoly constant_poly(const VarSet& vars, const RationalFunction& c) { return SysPoly::constant(vars, c); }

/// Every coefficient is a real rational constant.
bool rational_coefficients(const std::vector<SysPoly>& coeffs) {
    for (const auto& c : coeffs) {
        if (c.is_zero()) continue;
        if (!c.is_constant()) return false;
        const RationalFunction& v = c.constant_term();
        if (!v.is_constant() || !v.constant_value().is_real()) return false;
    }
    return true;
}

std::vector<mpz_class> divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> out;
    if (n == 0 || n > mpz_class("1000000000000")) return out;
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        if (d * d != n) out.push_back(n / d);
    }
    return out;
}

/// A rational root of a univariate polynomial with rational coefficients.
std::optional<Rational> rational_root(const std::vector<SysPoly>& coeffs) {
    mpz_class den = 1;
    for (const auto& c : coeffs) {
        if (c.is_zero()) continue;
        mpz_class d = c.constant_term().constant_value().re().denominator();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<mpz_class> ints;
    for (const auto& c : coeffs) {
        Rational r = c.is_zero() ? Rational(0) : c.constant_term().constant_value().re();
        ints.push_back(r.numerator() * (den / r.denominator()));
    }
    std::size_t low = 0;
    while (low < ints.size() && ints[low] == 0) ++low;
    if (low > 0) return Rational(0);
    auto ps = divisors(ints.front());
    auto qs = divisors(ints.back());
    for (const auto& p : ps) {
        for (const auto& q : qs) {
            for (int sign : {1, -1}) {
                Rational x(mpz_class(sign * p), q);
                Rational acc(0);
                for (std::size_t k = ints.size(); k-- > 0;) acc = acc * x + Rational(ints[k], mpz_class(1));
                if (acc.is_zero()) return x;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<SysPoly> split_factors(const SysPoly& p) {
    if (p.is_constant()) return {};
    const VarSet& vars = p.vars();
    const auto used = p.used_vars();

    // monomial factor
    for (std::size_t k : used) {
        bool all = true;
        for (const auto& [e, c] : p.terms()) all = all && e[k] > 0;
        if (!all) continue;
        SysPoly x = var_poly(vars, k);
        SysPoly rest = divide_exact(p, x);
        if (rest.is_constant()) return {};
        return {x, rest};
    }

    // polynomial content with respect to one variable
    if (used.size() > 1) {
        for (std::size_t k : used) {
            SysPoly c = detail::content_in(p, k);
            if (c.is_constant()) continue;
            return {c, divide_exact(p, c)};
        }
    }

    // quadratic in some variable with a square discriminant:
    // 4a*p = (2ax + b - S)(2ax + b + S) with S^2 = b^2 - 4ac
    for (std::size_t k : used) {
        if (p.degree(k) != 2) continue;
        auto co = p.coefficients_in(k);
        const SysPoly &a = co[2], &b = co[1], &c = co[0];
        SysPoly disc = b * b - a * c.scaled(RationalFunction(4));
        auto s = sqrt_exact(disc, [](const RationalFunction& v) { return rf_sqrt(v); });
        if (!s) continue;
        SysPoly lin = a.scaled(RationalFunction(2)) * var_poly(vars, k) + b;
        if (s->is_zero()) return {make_monic(lin)};
        return {make_monic(lin - *s), make_monic(lin + *s)};
    }

    // rational root of a univariate polynomial
    if (used.size() == 1 && p.degree(used[0]) >= 3) {
        auto co = p.coefficients_in(used[0]);
        if (rational_coefficients(co)) {
            if (auto r = rational_root(co)) {
                SysPoly lin = var_poly(vars, used[0]) - constant_poly(vars, RationalFunction(*r));
                return {lin, divide_exact(p, lin)};
            }
        }
    }
    return {};
}

namespace {

struct State {
    std::vector<SysPoly> polys;
    std::map<std::size_t, ExtNumber> known;
    std::vector<std::pair<std::size_t, SysPoly>> pending;
    std::vector<std::string> conditions;
    std::vector<std::string> signs;
};

ExtNumber power(const ExtNumber& x, int k) {
    ExtNumber out(RationalFunction(1));
    for (int j = 0; j < k; ++j) out *= x;
    return out;
}

ExtNumber evaluate_poly(const SysPoly& p, const std::vector<ExtNumber>& values) {
    ExtNumber sum;
    for (const auto& [e, c] : p.terms()) {
        ExtNumber t(c);
        for (std::size_t k = 0; k < e.size(); ++k)
            if (e[k] > 0) t *= power(values[k], e[k]);
        sum += t;
    }
    return sum;
}

class Solver {
public:
    Solver(const PolySystem& sys, const SolveOptions& opts) : sys_(sys), opts_(opts) {
        ord_.order = *sys.unknowns;
    }

    SolutionSet run() {
        State st;
        for (const auto& e : sys_.equations) st.polys.push_back(e.poly);
        solve(std::move(st));
        prune_instances();
        return std::move(out_);
    }

private:
    const std::string& name(std::size_t k) const { return (*sys_.unknowns)[k]; }

    ExtNumber symbol(std::size_t k) const { return ExtNumber(RationalFunction::variable(sys_.field, name(k))); }

    static std::vector<const SysPoly*> by_size(const std::vector<SysPoly>& g) {
        std::vector<const SysPoly*> out;
        for (const auto& p : g) out.push_back(&p);
        std::stable_sort(out.begin(), out.end(), [](const SysPoly* a, const SysPoly* b) {
            auto ua = a->used_vars().size(), ub = b->used_vars().size();
            if (ua != ub) return ua < ub;
            return a->total_degree() < b->total_degree();
        });
        return out;
    }

    static std::vector<SysPoly> without(const std::vector<SysPoly>& g, const SysPoly* skip) {
        std::vector<SysPoly> out;
        for (const auto& p : g)
            if (&p != skip) out.push_back(p);
        return out;
    }

    void solve(State st) {
        GroebnerBasis gb = buchberger(st.polys, ord_, opts_.max_pairs);
        ++out_.groebner_calls;
        out_.pairs_processed += gb.pairs_processed;
        if (gb.is_unit()) return;
        const auto& g = gb.basis;
        if (g.empty()) {
            leaf(st, {});
            return;
        }
        auto order = by_size(g);

        for (const SysPoly* p : order) {
            auto factors = split_factors(*p);
            if (factors.empty()) continue;
            bool proper = true;
            for (const auto& f : factors) proper = proper && !reduce(f, g).is_zero();
            if (!proper) continue;
            for (const auto& f : factors) {
                State next = st;
                next.polys = g;
                next.polys.push_back(f);
                next.conditions.push_back(f.to_string() + " = 0");
                solve(std::move(next));
            }
            return;
        }

        // univariate linear: x = value
        for (const SysPoly* p : order) {
            auto used = p->used_vars();
            if (used.size() != 1 || p->degree(used[0]) != 1) continue;
            std::size_t x = used[0];
            auto co = p->coefficients_in(x);
            RationalFunction value = -(co[0].constant_term() / co[1].constant_term());
            State next = st;
            next.polys.clear();
            for (const auto& q : without(g, p)) next.polys.push_back(q.substitute(x, constant_poly(q.vars(), value)));
            next.known[x] = ExtNumber(value);
            solve(std::move(next));
            return;
        }

        // linear in one variable with a constant coefficient: eliminate it
        for (const SysPoly* p : order) {
            for (std::size_t x : p->used_vars()) {
                if (p->degree(x) != 1) continue;
                auto co = p->coefficients_in(x);
                if (!co[1].is_constant()) continue;
                SysPoly expr = co[0].scaled(-co[1].constant_term().inverse());
                State next = st;
                next.polys.clear();
                for (const auto& q : without(g, p)) next.polys.push_back(q.substitute(x, expr));
                next.pending.emplace_back(x, expr);
                solve(std::move(next));
                return;
            }
        }

        // univariate quadratic in a variable nothing else mentions: two radical roots
        for (const SysPoly* p : order) {
            auto used = p->used_vars();
            if (used.size() != 1 || p->degree(used[0]) != 2) continue;
            std::size_t x = used[0];
            bool alone = true;
            for (const auto& q : g) alone = alone && (&q == p || !q.uses(x));
            if (!alone) continue;
            auto co = p->coefficients_in(x);
            RationalFunction a = co[2].constant_term(), b = co[1].constant_term(), c = co[0].constant_term();
            RationalFunction disc = b * b - RationalFunction(4) * a * c;
            RationalFunction half_inv = (RationalFunction(2) * a).inverse();
            for (int sign : {1, -1}) {
                ExtNumber root = ExtNumber(-b * half_inv) + ExtNumber(RadicalValue::make(sign, half_inv, disc));
                State next = st;
                next.polys = without(g, p);
                next.known[x] = root;
                next.signs.push_back(name(x) + " = " + root.to_string());
                solve(std::move(next));
            }
            return;
        }

        leaf(st, g);
    }

    void leaf(const State& st, const std::vector<SysPoly>& residual) {
        const std::size_t n = sys_.unknowns->size();
        std::vector<ExtNumber> values(n);
        std::vector<Assignment::Kind> kinds(n, Assignment::Kind::Free);
        std::set<std::size_t> open;
        for (const auto& r : residual)
            for (std::size_t k : r.used_vars()) open.insert(k);
        for (std::size_t k = 0; k < n; ++k) {
            if (auto it = st.known.find(k); it != st.known.end()) {
                values[k] = it->second;
                kinds[k] = Assignment::Kind::Value;
            } else {
                values[k] = symbol(k);
                if (open.count(k)) kinds[k] = Assignment::Kind::Open;
            }
        }
        for (const auto& [x, expr] : st.pending) kinds[x] = Assignment::Kind::Value;
        for (auto it = st.pending.rbegin(); it != st.pending.rend(); ++it) values[it->first] = evaluate_poly(it->second, values);

        SolutionBranch b;
        for (std::size_t k = 0; k < n; ++k) {
            Assignment a;
            a.kind = kinds[k];
            if (a.kind == Assignment::Kind::Value) a.value = values[k];
            b.assignment.emplace_back(name(k), std::move(a));
        }
        b.conditions = st.conditions;
        b.signs = st.signs;
        b.unresolved = !residual.empty();
        b.residual = residual;
        if (!b.unresolved && !check_branch(sys_, b)) return;
        if (!seen_.insert(b.key()).second) return;
        out_.branches.push_back(std::move(b));
    }

    /// True when `b` is `general` with its free unknowns specialized to b's rational values.
    static bool instance_of(const SolutionBranch& b, const SolutionBranch& general) {
        std::map<std::string, RationalFunction> bind;
        for (std::size_t k = 0; k < b.assignment.size(); ++k) {
            const Assignment& g = general.assignment[k].second;
            const Assignment& x = b.assignment[k].second;
            if (!g.is_free()) continue;
            if (x.is_free()) continue;
            if (!x.value.is_rational()) return false;
            bind.emplace(b.assignment[k].first, x.value.rational_value());
        }
        for (std::size_t k = 0; k < b.assignment.size(); ++k) {
            const Assignment& g = general.assignment[k].second;
            const Assignment& x = b.assignment[k].second;
            if (g.is_free()) continue;
            if (x.kind != Assignment::Kind::Value) return false;
            auto special = g.value.substituted(bind);
            if (!special || !(*special == x.value)) return false;
        }
        return true;
    }

    void prune_instances() {
        auto& all = out_.branches;
        std::vector<bool> drop(all.size(), false);
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (all[i].unresolved) continue;
            for (std::size_t j = 0; j < all.size() && !drop[i]; ++j) {
                if (i == j || drop[j] || all[j].unresolved) continue;
                if (all[j].free_unknowns().size() <= all[i].free_unknowns().size()) continue;
                drop[i] = instance_of(all[i], all[j]);
            }
        }
        std::vector<SolutionBranch> kept;
        for (std::size_t i = 0; i < all.size(); ++i)
            if (!drop[i]) kept.push_back(std::move(all[i]));
        all = std::move(kept);
    }

    const PolySystem& sys_;
    SolveOptions opts_;
    TermOrder ord_;
    SolutionSet out_;
    std::set<std::string> seen_;
};

}  // namespace

SolutionSet factor_split_solve(const PolySystem& system, const SolveOptions& opts) {
    return Solver(system, opts).run();
}

ExtNumber evaluate_at(const SysPoly& p, const PolySystem& system, const SolutionBranch& branch) {
    std::vector<ExtNumber> values;
    for (const auto& u : *system.unknowns) {
        const Assignment* a = branch.find(u);
        if (a && a->kind == Assignment::Kind::Value) values.push_back(a->value);
        else values.emplace_back(RationalFunction::variable(system.field, u));
    }
    return evaluate_poly(p, values);
}

bool check_branch(const PolySystem& system, const SolutionBranch& branch) {
    if (branch.unresolved) throw std::invalid_argument("cannot check an unresolved branch");
    for (const auto& eq : system.equations)
        if (!evaluate_at(eq.poly, system, branch).is_zero()) return false;
    return true;
}

}  // namespace sge
