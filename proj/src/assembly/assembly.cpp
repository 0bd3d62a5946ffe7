#include "sge/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace sge {

namespace {

const Expr& eta_symbol() {
    static const Expr e = sym("eta");
    return e;
}

Expr basis_monomial(int a, int b) {
    return pow(apply(Func::Sech, eta_symbol()), a) * pow(apply(Func::Tanh, eta_symbol()), b);
}

Expr param_poly_expr(const ParamPoly& p, const std::map<std::string, Expr>& values) {
    Expr out = num(0);
    for (const auto& [e, c] : p.terms()) {
        Expr t = num(c);
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            const std::string& name = (*p.vars())[k];
            auto it = values.find(name);
            if (it == values.end()) throw RealizeError("unknown '" + name + "' is not fixed by the branch");
            t = t * pow(it->second, e[k]);
        }
        out = out + t;
    }
    return out;
}

double pole_distance(std::complex<double> eta) {
    // sech and tanh blow up at i*pi*(k + 1/2); tanh(eta/2) at i*pi*(2k + 1).
    double best = INFINITY;
    double im = eta.imag();
    for (double step : {std::numbers::pi, 2 * std::numbers::pi}) {
        double k = std::round(im / step - 0.5);
        for (double j : {k - 1, k, k + 1}) {
            std::complex<double> pole(0, step * (j + 0.5));
            best = std::min(best, std::abs(eta - pole));
        }
    }
    return best;
}

}  // namespace

Expr ClosedForm::eta() const {
    return substitute(frame.eta(), frame.speed, speed);
}

Expr ClosedForm::in_coordinates() const {
    return substitute(expression, "eta", eta());
}

const std::vector<AntiderivEntry>& antideriv_table() {
    static const std::vector<AntiderivEntry> table = [] {
        const Expr& e = eta_symbol();
        std::vector<AntiderivEntry> t;
        t.push_back({0, 0, basis_monomial(0, 0), e});
        t.push_back({0, 1, basis_monomial(0, 1), apply(Func::Ln, apply(Func::Cosh, e))});
        t.push_back({0, 2, basis_monomial(0, 2), e - apply(Func::Tanh, e)});
        t.push_back({1, 0, basis_monomial(1, 0),
                     num(2) * apply(Func::Arctan, apply(Func::Tanh, num(GaussianRational(Rational(1, 2))) * e))});
        t.push_back({1, 1, basis_monomial(1, 1), -apply(Func::Sech, e)});
        return t;
    }();
    return table;
}

ClosedForm realize(const Ansatz& ansatz, const std::map<std::string, Expr>& values, const WaveFrame& frame,
                   const std::string& dependent, bool negate_c) {
    ClosedForm out;
    out.frame = frame;
    out.dependent = dependent;
    auto sp = values.find(ansatz.speed());
    out.speed = sp == values.end() ? sym(ansatz.speed()) : sp->second;
    Expr total = num(0);
    for (const auto& [key, coeff] : ansatz.body().terms()) {
        auto [a, b] = key;
        Expr c = canonical(param_poly_expr(coeff, values));
        if (negate_c && b % 2 == 1) c = -c;
        if (c.is_zero()) continue;
        out.basis.push_back({a, b, c});
        total = total + c * basis_monomial(a, b);
    }
    out.expression = canonical(total);
    return out;
}

ClosedForm realize(const Ansatz& ansatz, const SolutionBranch& branch, const WaveFrame& frame,
                   const std::string& dependent, bool negate_c) {
    if (branch.unresolved) throw RealizeError("branch is unresolved");
    std::map<std::string, Expr> values;
    for (const auto& [name, a] : branch.assignment) {
        if (a.kind == Assignment::Kind::Value) values.emplace(name, parse_expr(a.value.to_string()));
        else if (name != ansatz.speed()) throw RealizeError("unknown '" + name + "' is free in the ansatz body");
    }
    return realize(ansatz, values, frame, dependent, negate_c);
}

ClosedForm integrate_trig(const ClosedForm& v) {
    if (v.basis.empty() && !v.expression.is_zero())
        throw RealizeError("closed form has no sech/tanh expansion to integrate");
    ClosedForm out = v;
    out.basis.clear();
    Expr total = num(0);
    for (const auto& t : v.basis) {
        const AntiderivEntry* entry = nullptr;
        for (const auto& e : antideriv_table())
            if (e.a == t.a && e.b == t.b) entry = &e;
        if (!entry)
            throw RealizeError("no antiderivative for sech^" + std::to_string(t.a) + "*tanh^" + std::to_string(t.b));
        total = total + t.coeff * entry->antiderivative;
    }
    out.expression = canonical(total);
    return out;
}

VerificationReport verify_numeric_residual(const Expr& pde, const ClosedForm& sol, const EvalContext& params,
                                           int npoints, double tol, std::uint64_t seed) {
    VerificationReport report;
    report.tolerance = tol;

    Expr u = sol.in_coordinates();
    std::map<std::vector<std::string>, Expr> cache;
    auto resolve = [&](std::vector<std::string> coords) {
        std::sort(coords.begin(), coords.end());
        auto it = cache.find(coords);
        if (it != cache.end()) return it->second;
        Expr d = u;
        for (const auto& c : coords) d = differentiate(d, c);
        cache.emplace(coords, d);
        return d;
    };
    Expr residual = canonical(replace_derivatives(pde, sol.dependent, u, resolve));
    Expr eta = sol.eta();

    std::vector<std::string> coords;
    for (const auto& [c, k] : sol.frame.spatial) coords.push_back(c);
    if (!sol.frame.time.empty()) coords.push_back(sol.frame.time);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    long attempts = 0;
    while (report.points < npoints) {
        if (++attempts > 10000L * npoints) {
            report.failures.push_back("could not draw admissible sample points (|eta| <= 3, away from poles)");
            break;
        }
        EvalContext ctx = params;
        for (const auto& c : coords) ctx[c] = coord(rng);
        std::complex<double> e;
        try {
            e = eval_numeric(eta, ctx);
        } catch (const EvalError& err) {
            report.failures.push_back(std::string("eta: ") + err.what());
            break;
        }
        if (std::abs(e) > 3 || pole_distance(e) < 0.5) continue;
        ++report.points;
        std::ostringstream where;
        for (const auto& c : coords) where << (c == coords.front() ? "" : ", ") << c << "=" << ctx[c].real();
        try {
            double r = std::abs(eval_numeric(residual, ctx));
            if (!std::isfinite(r)) throw EvalError("non-finite residual");
            report.max_residual = std::max(report.max_residual, r);
            if (r > tol) report.failures.push_back("residual " + std::to_string(r) + " at " + where.str());
        } catch (const EvalError& err) {
            report.failures.push_back(std::string(err.what()) + " at " + where.str());
        }
    }
    return report;
}

bool verify_symbolic(const PolySystem& system, const SolutionBranch& branch) {
    return check_branch(system, branch);
}

PlotGrid sample_plot_data(const ClosedForm& sol, const EvalContext& params, const GridSpec& grid) {
    if (grid.axes.empty() || grid.axes.size() > 2) throw std::invalid_argument("grid needs one or two axes");
    for (const auto& ax : grid.axes) {
        if (ax.count < 1) throw std::invalid_argument("grid axis '" + ax.name + "' needs a positive count");
        if (ax.name == "eta" && grid.axes.size() != 1) throw std::invalid_argument("an eta axis must be the only axis");
    }
    PlotGrid out;
    for (const auto& ax : grid.axes) out.columns.push_back(ax.name);
    out.columns.push_back("re_u");
    out.columns.push_back("im_u");

    bool on_eta = grid.axes[0].name == "eta";
    Expr f = on_eta ? sol.expression : sol.in_coordinates();
    EvalContext base = params;
    if (!on_eta) {
        for (const auto& [c, k] : sol.frame.spatial) base[c] = 0.0;
        if (!sol.frame.time.empty()) base[sol.frame.time] = 0.0;
        for (const auto& [c, v] : grid.fixed) base[c] = v;
    }
    const GridAxis& first = grid.axes[0];
    const GridAxis* second = grid.axes.size() == 2 ? &grid.axes[1] : nullptr;
    for (int i = 0; i < first.count; ++i) {
        int inner = second ? second->count : 1;
        for (int j = 0; j < inner; ++j) {
            EvalContext ctx = base;
            std::vector<double> row{first.at(i)};
            ctx[first.name] = row[0];
            if (second) {
                row.push_back(second->at(j));
                ctx[second->name] = row[1];
            }
            std::complex<double> value = eval_numeric(f, ctx);
            row.push_back(value.real());
            row.push_back(value.imag());
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

}  // namespace sge
