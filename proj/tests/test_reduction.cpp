#include "doctest.h"

#include "fd_oracle.hpp"
#include "sge/reduction.hpp"

#include <random>

using namespace sge;
using cd = std::complex<double>;

namespace {

const char* kYtsf = "-4*D(u,x,t) + D(u,x,x,x,z) + 4*D(u,x)*D(u,x,z) + 2*D(u,x,x)*D(u,z) + 3*D(u,y,y)";
const char* kRd = "D(u,t,t) + alpha*D(u,x,x) + beta*u + gamma*u^3";

WaveFrame frame_xyz() { return {{{"x", Rational(1)}, {"y", Rational(1)}, {"z", Rational(1)}}, "t", "v"}; }
WaveFrame frame_x() { return {{{"x", Rational(1)}}, "t", "v"}; }

/// Coefficient polynomial from text over `vars`.
ParamPoly P(const VarSet& vars, const std::string& text) {
    Expr e = parse_expr(text);
    ParamPoly out(vars);
    for (const auto& term : e.kind() == Expr::Kind::Sum ? e.args() : std::vector<Expr>{e}) {
        ParamPoly t = ParamPoly::constant(vars, GaussianRational(1));
        for (const auto& f : term.kind() == Expr::Kind::Product ? term.args() : std::vector<Expr>{term}) {
            if (f.is_constant()) t = t.scaled(f.value());
            else if (f.kind() == Expr::Kind::Symbol) t = t * ParamPoly::variable(vars, f.name());
            else t = t * ParamPoly::variable(vars, f.args()[0].name()).pow(f.exponent());
        }
        out += t;
    }
    return out;
}

DerivPoly term(const VarSet& vars, const std::string& coeff, DerivPoly::Key key, const std::string& fn = "U") {
    DerivPoly d(vars, fn);
    d.add_term(std::move(key), P(vars, coeff));
    return d;
}

}  // namespace

TEST_CASE("reduce_to_ode on the two model equations") {
    VarSet v = make_vars({"v"});
    DerivPoly ytsf = reduce_to_ode(parse_expr(kYtsf), "u", frame_xyz(), v);
    DerivPoly expect = term(v, "1", {0, 0, 0, 0, 1}) + term(v, "6", {0, 1, 1}) + term(v, "4*v + 3", {0, 0, 1});
    CHECK(ytsf == expect);
    CHECK(ytsf.to_string() == "U'''' + 6*U'*U'' + (4*v + 3)*U''");

    VarSet p = make_vars({"alpha", "beta", "gamma", "v"});
    DerivPoly rd = reduce_to_ode(parse_expr(kRd), "u", frame_x(), p);
    CHECK(rd == term(p, "alpha + v^2", {0, 0, 1}) + term(p, "beta", {1}) + term(p, "gamma", {3}));

    DerivPoly adv = reduce_to_ode(parse_expr("D(u,t) + D(u,x)"), "u", frame_x(), v);
    CHECK(adv == term(v, "1 - v", {0, 1}));

    CHECK_THROWS_AS(reduce_to_ode(parse_expr("sin(u)"), "u", frame_x(), v), ReductionError);
    CHECK_THROWS_AS(reduce_to_ode(parse_expr("u^-1"), "u", frame_x(), v), ReductionError);
    CHECK_THROWS_AS(reduce_to_ode(parse_expr("D(w,x)"), "u", frame_x(), v), ReductionError);
    CHECK_THROWS_AS(reduce_to_ode(parse_expr("D(u,y)"), "u", frame_x(), v), ReductionError);
}

TEST_CASE("integrate_once") {
    VarSet v = make_vars({"v"});
    DerivPoly ytsf = reduce_to_ode(parse_expr(kYtsf), "u", frame_xyz(), v);
    DerivPoly once = integrate_once(ytsf);
    CHECK(once == term(v, "1", {0, 0, 0, 1}) + term(v, "3", {0, 2}) + term(v, "4*v + 3", {0, 1}));
    CHECK(integrate_once(term(v, "1", {0, 0, 1})) == term(v, "1", {0, 1}));
    VarSet p = make_vars({"beta", "gamma"});
    CHECK_THROWS_AS(integrate_once(term(p, "beta", {1}) + term(p, "gamma", {3})), NotIntegrable);
}

TEST_CASE("reduce_order") {
    VarSet v = make_vars({"v"});
    DerivPoly eq12 = term(v, "1", {0, 0, 0, 1}) + term(v, "3", {0, 2}) + term(v, "4*v + 3", {0, 1});
    DerivPoly eq13 = reduce_order(eq12);
    CHECK(eq13 == term(v, "1", {0, 0, 1}, "V") + term(v, "3", {2}, "V") + term(v, "4*v + 3", {1}, "V"));
    CHECK(eq13.to_string() == "V'' + 3*V^2 + (4*v + 3)*V");
    CHECK(reduce_order(term(v, "1", {0, 1})) == term(v, "1", {1}, "V"));
    VarSet p = make_vars({"alpha", "beta", "gamma", "v"});
    CHECK_THROWS_AS(reduce_order(term(p, "alpha + v^2", {0, 0, 1}) + term(p, "beta", {1}) + term(p, "gamma", {3})),
                    ReductionError);
}

TEST_CASE("homogeneous_balance") {
    VarSet v = make_vars({"v"});
    DerivPoly eq13 = term(v, "1", {0, 0, 1}, "V") + term(v, "3", {2}, "V") + term(v, "4*v + 3", {1}, "V");
    BalanceResult b = homogeneous_balance(eq13);
    CHECK(b.n == 2);
    CHECK(b.linear_term == DerivPoly::Key{0, 0, 1});
    CHECK(b.nonlinear_term == DerivPoly::Key{2});

    VarSet p = make_vars({"alpha", "beta", "gamma", "v"});
    DerivPoly eq21 = term(p, "alpha + v^2", {0, 0, 1}) + term(p, "beta", {1}) + term(p, "gamma", {3});
    CHECK(homogeneous_balance(eq21).n == 1);
    CHECK(homogeneous_balance(eq21).nonlinear_term == DerivPoly::Key{3});

    CHECK_THROWS_AS(homogeneous_balance(term(v, "1", {0, 0, 1}) + term(v, "1", {1})), MethodInapplicable);
    CHECK_THROWS_AS(homogeneous_balance(term(v, "1", {2})), MethodInapplicable);
    // n + 1 = 2n + 3 has no positive solution
    CHECK_THROWS_AS(homogeneous_balance(term(v, "1", {0, 1}) + term(v, "1", {0, 0, 0, 1, 1})), MethodInapplicable);

    // invariant under scaling by a nonzero field constant
    for (auto c : {GaussianRational(-3), GaussianRational(Rational(1), Rational(2)), GaussianRational::i()}) {
        CHECK(homogeneous_balance(eq13.scaled(ParamPoly::constant(v, c))).n == 2);
        CHECK(homogeneous_balance(eq21.scaled(ParamPoly::constant(p, c))).n == 1);
    }
}

TEST_CASE("reduce_to_ode is linear in the pde") {
    const std::vector<std::string> pieces = {"D(u,x,t)", "u*D(u,x)", "beta*u^2", "D(u,x,x,x)", "D(u,t)^2", "3*u",
                                             "D(u,x)*D(u,t,t)", "-2*beta*D(u,t)"};
    VarSet vars = make_vars({"beta", "v"});
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(pieces.size()) - 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::string a = pieces[pick(rng)] + " + " + pieces[pick(rng)];
        std::string b = pieces[pick(rng)] + " - " + pieces[pick(rng)];
        DerivPoly sum = reduce_to_ode(parse_expr(a + " + " + b), "u", frame_x(), vars);
        DerivPoly parts = reduce_to_ode(parse_expr(a), "u", frame_x(), vars) +
                          reduce_to_ode(parse_expr(b), "u", frame_x(), vars);
        CHECK(sum == parts);
    }
}

TEST_CASE("d/deta inverts integrate_once on the pattern class") {
    VarSet v = make_vars({"v"});
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> order(0, 4), coeff(-5, 5), count(1, 4), kind(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
        DerivPoly x(v, "U");
        for (int k = count(rng); k > 0; --k) {
            int j = order(rng);
            int c = coeff(rng);
            if (c == 0) continue;
            DerivPoly::Key key(j + 2, 0);
            if (kind(rng)) key[j + 1] = 1;          // c * U^(j+1)
            else key[j] = 1, key[j + 1] = 1;        // c * U^(j) U^(j+1)
            x.add_term(key, ParamPoly::constant(v, GaussianRational(c)));
        }
        CHECK(integrate_once(x).d_eta() == x);
    }
}

TEST_CASE("reduced ODE agrees with finite differences of the pde") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coef(-1, 1), coord(-1, 1);
    struct Case {
        const char* pde;
        WaveFrame frame;
        std::vector<std::string> params;
    };
    const Case cases[] = {{kYtsf, frame_xyz(), {}}, {kRd, frame_x(), {"alpha", "beta", "gamma"}}};
    for (const auto& cs : cases) {
        std::vector<std::string> names = cs.params;
        names.push_back("v");
        VarSet vars = make_vars(names);
        Expr pde = parse_expr(cs.pde);
        DerivPoly ode = reduce_to_ode(pde, "u", cs.frame, vars);
        for (int trial = 0; trial < 10; ++trial) {
            double F[5];
            for (double& f : F) f = coef(rng);
            std::vector<cd> values;
            sge::EvalContext ctx;
            for (const auto& n : names) {
                double val = coef(rng) * 2;
                values.emplace_back(val);
                ctx[n] = val;
            }
            const double speed = values.back().real();
            auto eta_of = [&](const fd::Point& q) {
                double e = 0;
                for (const auto& [c, k] : cs.frame.spatial) e += k.to_double() * q.at(c);
                return e - speed * q.at("t");
            };
            auto Fk = [&](int k, double e) {
                // k-th derivative of sum F[j] e^j
                double s = 0;
                for (int j = k; j < 5; ++j) {
                    double fall = 1;
                    for (int m = 0; m < k; ++m) fall *= j - m;
                    s += F[j] * fall * std::pow(e, j - k);
                }
                return s;
            };
            fd::Field u = [&](const fd::Point& q) { return cd(Fk(0, eta_of(q))); };

            fd::Point p{{"x", coord(rng)}, {"y", coord(rng)}, {"z", coord(rng)}, {"t", coord(rng)}};
            sge::EvalContext full = ctx;
            int slot = 0;
            Expr replaced = replace_derivatives(pde, "u", sym("u_value"), [&](const std::vector<std::string>& cs2) {
                std::string name = "d" + std::to_string(slot++);
                full[name] = fd::partial(u, p, cs2, 1e-2);
                return sym(name);
            });
            full["u_value"] = u(p);
            cd lhs = eval_numeric(replaced, full);

            const double e = eta_of(p);
            cd rhs = 0;
            for (const auto& [key, c] : ode.terms()) {
                cd t = sge::evaluate(c, values);
                for (std::size_t k = 0; k < key.size(); ++k)
                    for (int m = 0; m < key[k]; ++m) t *= Fk(static_cast<int>(k), e);
                rhs += t;
            }
            CHECK(std::abs(lhs - rhs) <= 1e-4 * std::max(1.0, std::abs(rhs)));
        }
    }
}
