#include "doctest.h"

#include "expected_systems.hpp"
#include "sge/trig.hpp"

#include <cmath>
#include <random>

using namespace sge;
using cd = std::complex<double>;
using expected::Tagged;

namespace {

const char* kYtsf = "-4*D(u,x,t) + D(u,x,x,x,z) + 4*D(u,x)*D(u,x,z) + 2*D(u,x,x)*D(u,z) + 3*D(u,y,y)";
const char* kRd = "D(u,t,t) + alpha*D(u,x,x) + beta*u + gamma*u^3";

ParamPoly var(const Ansatz& a, const std::string& name) { return ParamPoly::variable(a.vars(), name); }
ParamPoly k(const VarSet& vars, long c) { return ParamPoly::constant(vars, GaussianRational(c)); }

/// Random TrigPoly with small integer coefficients and raw s-degree up to `max_a`.
TrigPoly random_trig(std::mt19937_64& rng, const VarSet& vars, int max_a, int max_b) {
    std::uniform_int_distribution<int> ca(0, max_a), cb(0, max_b), coeff(-4, 4), count(1, 5);
    TrigPoly p(vars);
    for (int t = count(rng); t > 0; --t) p.add_raw(ca(rng), cb(rng), k(vars, coeff(rng)));
    return p;
}

cd sech(double x) { return 1.0 / std::cosh(x); }

PolySystem system_for(const char* pde, WaveFrame frame, const std::vector<std::string>& params, bool ytsf) {
    std::vector<std::string> names = params;
    names.push_back("v");
    DerivPoly ode = reduce_to_ode(parse_expr(pde), "u", frame, make_vars(names));
    if (ytsf) ode = reduce_order(integrate_once(ode));
    Ansatz a = build_ansatz(homogeneous_balance(ode).n, params);
    return extract_coefficient_system(substitute_ansatz(ode, a), a);
}

void check_against_expected(const PolySystem& sys, const Tagged* table, std::size_t count) {
    REQUIRE(sys.equations.size() == count);
    for (std::size_t j = 0; j < count; ++j) {
        const Tagged& t = table[j];
        SysPoly expected = parse_system_poly(t.text, sys.unknowns, sys.field);
        bool found = false;
        for (const auto& eq : sys.equations) {
            if (eq.a != t.a || eq.b != t.b) continue;
            found = true;
            CHECK_MESSAGE(eq.poly == expected, "tag (" << t.a << "," << t.b << "): " << eq.poly.to_string());
        }
        CHECK(found);
    }
}

}  // namespace

TEST_CASE("build_ansatz") {
    Ansatz a2 = build_ansatz(2, {});
    const VarSet& v = a2.vars();
    TrigPoly expect(v);
    expect.add_raw(0, 0, var(a2, "A0"));
    expect.add_raw(0, 1, var(a2, "A1"));
    expect.add_raw(1, 0, var(a2, "B1"));
    expect.add_raw(0, 2, var(a2, "A2"));
    expect.add_raw(1, 1, var(a2, "B2"));
    CHECK(a2.body() == expect);
    CHECK(a2.unknowns() == std::vector<std::string>{"A2", "B2", "A1", "B1", "A0", "v"});

    Ansatz a1 = build_ansatz(1, {"alpha"});
    CHECK(a1.body().terms().size() == 3);
    CHECK(a1.unknowns() == std::vector<std::string>{"A1", "B1", "A0", "v"});

    Ansatz a3 = build_ansatz(3, {});
    CHECK(a3.body().coefficient(0, 3) == var(a3, "A3"));
    CHECK(a3.body().coefficient(1, 2) == var(a3, "B3"));
    for (const auto& [key, c] : a3.body().terms()) CHECK(key.second <= 3 - key.first);

    CHECK_THROWS_AS(build_ansatz(0, {}), std::invalid_argument);
}

TEST_CASE("trig_normalize") {
    VarSet v = make_vars({"x"});
    TrigPoly s2(v), s3(v);
    s2.add_raw(2, 0, k(v, 1));
    s3.add_raw(3, 0, k(v, 1));
    TrigPoly one_minus_c2 = TrigPoly::constant(v, k(v, 1)) - TrigPoly::c(v) * TrigPoly::c(v);
    CHECK(trig_normalize(s2) == one_minus_c2);
    CHECK(trig_normalize(s3) == TrigPoly::s(v) - TrigPoly::s(v) * TrigPoly::c(v) * TrigPoly::c(v));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        TrigPoly p = trig_normalize(random_trig(rng, v, 6, 4));
        CHECK(p.is_normal());
        CHECK(trig_normalize(p) == p);
    }
}

TEST_CASE("trig_diff reproduces the second derivative of the n = 2 ansatz") {
    VarSet v = make_vars({"x"});
    CHECK(trig_diff(TrigPoly::c(v)) == TrigPoly::c(v) * TrigPoly::c(v) - TrigPoly::constant(v, k(v, 1)));

    Ansatz a = build_ansatz(2, {});
    const VarSet& vars = a.vars();
    // raw hand-derived form of V''
    TrigPoly raw(vars);
    raw.add_raw(3, 0, -var(a, "B1"));
    raw.add_raw(1, 2, var(a, "B1"));
    raw.add_raw(2, 1, var(a, "A1").scaled(-2));
    raw.add_raw(3, 1, var(a, "B2").scaled(-5));
    raw.add_raw(1, 3, var(a, "B2"));
    raw.add_raw(4, 0, var(a, "A2").scaled(2));
    raw.add_raw(2, 2, var(a, "A2").scaled(-4));

    // expanded by hand with s^2 = 1 - c^2
    TrigPoly oracle(vars);
    oracle.add_raw(0, 0, var(a, "A2").scaled(2));
    oracle.add_raw(1, 0, -var(a, "B1"));
    oracle.add_raw(0, 1, var(a, "A1").scaled(-2));
    oracle.add_raw(1, 1, var(a, "B2").scaled(-5));
    oracle.add_raw(0, 2, var(a, "A2").scaled(-8));
    oracle.add_raw(1, 2, var(a, "B1").scaled(2));
    oracle.add_raw(0, 3, var(a, "A1").scaled(2));
    oracle.add_raw(1, 3, var(a, "B2").scaled(6));
    oracle.add_raw(0, 4, var(a, "A2").scaled(6));

    CHECK(trig_normalize(raw) == oracle);
    CHECK(trig_diff(trig_diff(a.body())) == oracle);
    CHECK(a.derivative(2) == oracle);
}

TEST_CASE("Leibniz rule for trig_diff") {
    Ansatz a = build_ansatz(2, {"beta"});
    const VarSet& v = a.vars();
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pick(0, 6);
    const char* names[] = {"A0", "A1", "B1", "A2", "B2", "v", "beta"};
    for (int trial = 0; trial < 100; ++trial) {
        TrigPoly p = trig_normalize(random_trig(rng, v, 1, 4)).scaled(var(a, names[pick(rng)]));
        TrigPoly q = trig_normalize(random_trig(rng, v, 1, 4)) + TrigPoly::constant(v, var(a, names[pick(rng)]));
        CHECK(trig_diff(p * q) == trig_diff(p) * q + p * trig_diff(q));
    }
}

TEST_CASE("normal form is sound on the sech/tanh realization") {
    VarSet v = make_vars({"x"});
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> eta(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        TrigPoly raw = random_trig(rng, v, 5, 4);
        TrigPoly norm = trig_normalize(raw);
        for (int j = 0; j < 40; ++j) {
            double e = eta(rng);
            cd s = sech(e), c = std::tanh(e);
            cd before = raw.evaluate(s, c), after = norm.evaluate(s, c);
            CHECK(std::abs(before - after) <= 1e-12 * std::max(1.0, std::abs(before)));
        }
    }
}

TEST_CASE("derivation consistency against finite differences") {
    // The derivation s' = s*c, c' = -s^2 is realized by (sech, -tanh); on
    // (sech, tanh) it is realized up to the reflection eta -> -eta.
    VarSet v = make_vars({"x"});
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> eta(-3, 3);
    const double h = 1e-5;
    for (int trial = 0; trial < 50; ++trial) {
        TrigPoly p = trig_normalize(random_trig(rng, v, 1, 5));
        TrigPoly dp = trig_diff(p);
        for (int j = 0; j < 10; ++j) {
            double e = eta(rng);
            auto f = [&](double x) { return p.evaluate(sech(x), -std::tanh(x)); };
            auto g = [&](double x) { return p.evaluate(sech(x), std::tanh(x)); };
            cd fd_f = (f(e + h) - f(e - h)) / (2 * h);
            cd fd_g = (g(e + h) - g(e - h)) / (2 * h);
            cd exact_f = dp.evaluate(sech(e), -std::tanh(e));
            cd exact_g = -dp.evaluate(sech(e), std::tanh(e));
            CHECK(std::abs(fd_f - exact_f) <= 1e-6 * std::max(1.0, std::abs(exact_f)));
            CHECK(std::abs(fd_g - exact_g) <= 1e-6 * std::max(1.0, std::abs(exact_g)));
        }
    }
}

TEST_CASE("the sech/tanh basis is linearly independent") {
    VarSet v = make_vars({"x"});
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> eta(-2, 2);
    for (int trial = 0; trial < 50; ++trial) {
        TrigPoly p = trig_normalize(random_trig(rng, v, 1, 5));
        std::size_t points = 2 * std::max<std::size_t>(p.terms().size(), 1);
        double worst = 0;
        for (std::size_t j = 0; j < points; ++j) {
            double e = eta(rng);
            worst = std::max(worst, std::abs(p.evaluate(sech(e), std::tanh(e))));
        }
        CHECK((worst > 1e-9) == !p.is_zero());
    }
}

TEST_CASE("substitute_ansatz and the coefficient systems") {
    WaveFrame xyz{{{"x", Rational(1)}, {"y", Rational(1)}, {"z", Rational(1)}}, "t", "v"};
    WaveFrame x{{{"x", Rational(1)}}, "t", "v"};

    PolySystem ytsf = system_for(kYtsf, xyz, {}, true);
    check_against_expected(ytsf, expected::kYtsfSystem, std::size(expected::kYtsfSystem));
    std::vector<std::pair<int, int>> tags;
    for (const auto& eq : ytsf.equations) tags.emplace_back(eq.a, eq.b);
    CHECK(tags == std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {0, 4}});

    PolySystem rd = system_for(kRd, x, {"alpha", "beta", "gamma"}, false);
    check_against_expected(rd, expected::kRdSystem, std::size(expected::kRdSystem));

    Ansatz a = build_ansatz(2, {});
    DerivPoly identity = DerivPoly::derivative(make_vars({"v"}), "V", 0);
    CHECK(substitute_ansatz(identity, a) == a.body());

    CHECK(extract_coefficient_system(TrigPoly(a.vars()), a).equations.empty());
}
