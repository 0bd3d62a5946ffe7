#include "doctest.h"

#include "golden_corpus.hpp"
#include "sge/expr.hpp"

#include <cmath>
#include <random>

using namespace sge;
using cd = std::complex<double>;

namespace {

/// Random composite expression in eta over smooth functions.
Expr random_expr(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
    std::uniform_int_distribution<int> small(-3, 3);
    Expr eta = sym("eta");
    switch (pick(rng)) {
        case 0: return eta;
        case 1: return num(GaussianRational(Rational::normalize(small(rng), 2)));
        case 2: return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
        case 3: return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
        case 4: return pow(random_expr(rng, depth - 1), 2);
        case 5: return apply(Func::Tanh, random_expr(rng, depth - 1));
        case 6: return apply(Func::Sech, random_expr(rng, depth - 1));
        default: {
            const Func fs[] = {Func::Sin, Func::Cos, Func::Exp, Func::Arctan, Func::Sinh, Func::Cosh};
            std::uniform_int_distribution<int> f(0, 5);
            return apply(fs[f(rng)], random_expr(rng, depth - 1));
        }
    }
}

cd at(const Expr& e, double eta) { return eval_numeric(e, {{"eta", eta}}); }

}  // namespace

TEST_CASE("parse_expr builds the expected trees") {
    Expr ytsf = parse_expr(kGoldenCorpus[0]);
    CHECK(ytsf.kind() == Expr::Kind::Sum);
    CHECK(ytsf.args().size() == 5);
    CHECK(contains_deriv(ytsf));
    Expr rd = parse_expr(kGoldenCorpus[1]);
    CHECK(free_symbols(rd) == std::vector<std::string>{"alpha", "beta", "gamma", "u"});
    Expr sol1 = parse_expr("2*tanh(eta)");
    REQUIRE(sol1.kind() == Expr::Kind::Product);
    CHECK(sol1.args()[0].value() == GaussianRational(2));
    CHECK(sol1.args()[1].kind() == Expr::Kind::Call);
    CHECK(sol1.args()[1].func() == Func::Tanh);
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_expr("1 +\n  foo(x)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 3);
    }
    CHECK_THROWS_AS(parse_expr("x^1.5"), ParseError);
    CHECK_THROWS_AS(parse_expr("x^y"), ParseError);
    CHECK_THROWS_AS(parse_expr("(x + 1"), ParseError);
    CHECK_THROWS_AS(parse_expr("x $ y"), ParseError);
    CHECK_THROWS_AS(parse_expr("D(u)"), ParseError);
    CHECK_THROWS_AS(parse_expr("2 x"), ParseError);
}

TEST_CASE("render/parse round trip on the golden corpus") {
    for (const auto& text : kGoldenCorpus) {
        Expr e = parse_expr(text);
        Expr again = parse_expr(e.to_string());
        CHECK_MESSAGE(again == canonical(e), text);
        CHECK(again.to_string() == e.to_string());
    }
    CHECK(parse_expr("2*tanh(eta) - 4/3*eta").to_string() == "-4/3*eta + 2*tanh(eta)");
    CHECK(parse_expr("0.5*x + x").to_string() == "3/2*x");
}

TEST_CASE("render/parse round trip on random trees") {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 300; ++k) {
        Expr e = canonical(random_expr(rng, 4));
        REQUIRE_MESSAGE(parse_expr(e.to_string()) == e, e.to_string());
    }
}

TEST_CASE("differentiate") {
    CHECK(differentiate(parse_expr("tanh(eta)"), "eta") == parse_expr("sech(eta)^2"));
    CHECK(differentiate(parse_expr("2*tanh(eta) - 4/3*eta"), "eta") == parse_expr("2*sech(eta)^2 - 4/3"));
    CHECK(differentiate(parse_expr("sech(eta)"), "eta") == parse_expr("-sech(eta)*tanh(eta)"));
    CHECK(differentiate(parse_expr("ln(x)"), "x") == parse_expr("x^-1"));
    CHECK(differentiate(parse_expr("x^3*y"), "y") == parse_expr("x^3"));
    CHECK_THROWS_AS(differentiate(parse_expr("D(u,x)"), "x"), DifferentiationError);
}

TEST_CASE("differentiate agrees with central finite differences") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> point(-1.5, 1.5);
    const double h = 1e-5;
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Expr e = random_expr(rng, 3);
        Expr de = differentiate(e, "eta");
        for (int k = 0; k < 10; ++k) {
            double x = point(rng);
            cd exact, fd;
            try {
                exact = at(de, x);
                fd = (at(e, x + h) - at(e, x - h)) / (2 * h);
            } catch (const EvalError&) {
                continue;
            }
            double scale = std::max(1.0, std::abs(exact));
            if (scale > 1e4) continue;  // too close to a singularity for a 1e-5 step
            REQUIRE_MESSAGE(std::abs(exact - fd) / scale < 1e-6, e.to_string());
            ++checked;
        }
    }
    CHECK(checked > 400);
}

TEST_CASE("differentiation is linear") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        Expr f = random_expr(rng, 3), g = random_expr(rng, 3);
        Expr a = num(GaussianRational(Rational::normalize(3, 2))), b = num(GaussianRational(-2, 1));
        Expr lhs = differentiate(a * f + b * g, "eta");
        Expr rhs = canonical(a * differentiate(f, "eta") + b * differentiate(g, "eta"));
        REQUIRE_MESSAGE(lhs == rhs, lhs.to_string() << "  vs  " << rhs.to_string());
    }
}

TEST_CASE("eval_numeric") {
    CHECK(std::abs(at(parse_expr("tanh(eta)"), 0.0)) == 0.0);
    cd plus = at(parse_expr("tanh(eta) + i*sech(eta)"), 0.0);
    cd minus = at(parse_expr("tanh(eta) - i*sech(eta)"), 0.0);
    CHECK(std::abs(plus - cd(0, 1)) < 1e-15);
    CHECK(std::abs(minus - cd(0, -1)) < 1e-15);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> eta(-6, 6);
    Expr wave = parse_expr("tanh(eta) + i*sech(eta)");
    for (int k = 0; k < 50; ++k) CHECK(std::abs(std::abs(at(wave, eta(rng))) - 1.0) < 1e-12);

    CHECK_THROWS_AS(eval_numeric(parse_expr("x + y"), {{"x", 1.0}}), EvalError);
    CHECK_THROWS_AS(at(parse_expr("ln(eta)"), 0.0), EvalError);
    CHECK_THROWS_AS(at(parse_expr("eta^-1"), 0.0), EvalError);
}

TEST_CASE("tanh^2 + sech^2 = 1 and large arguments stay finite") {
    Expr t = parse_expr("tanh(eta)"), s = parse_expr("sech(eta)");
    for (double x = -3.0; x <= 3.0; x += 0.01) {
        cd tv = at(t, x), sv = at(s, x);
        REQUIRE(std::abs(tv * tv + sv * sv - 1.0) < 1e-12);
    }
    CHECK(std::abs(at(s, 800.0)) < 1e-300);
    CHECK(std::abs(at(t, -800.0) + 1.0) < 1e-15);
    Expr lc = parse_expr("ln(cosh(eta))");
    CHECK(std::abs(at(lc, 1000.0) - (1000.0 - std::log(2.0))) < 1e-9);
    CHECK(std::abs(at(lc, 0.3) - std::log(std::cosh(0.3))) < 1e-15);
}

TEST_CASE("substitute") {
    Expr frame = parse_expr("x + y + z + 7/4*t");
    Expr u = substitute(parse_expr("tanh(eta)"), "eta", frame);
    CHECK(u == parse_expr("tanh(x + y + z + 7/4*t)"));
    CHECK(substitute(sym("u"), "u", sym("u")) == sym("u"));

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> coord(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        Expr e = random_expr(rng, 3);
        Expr composed = substitute(e, "eta", frame);
        for (int k = 0; k < 10; ++k) {
            double x = coord(rng), y = coord(rng), z = coord(rng), tt = coord(rng);
            double eta = x + y + z + 1.75 * tt;
            cd direct, via;
            try {
                direct = eval_numeric(composed, {{"x", x}, {"y", y}, {"z", z}, {"t", tt}});
                via = at(e, eta);
            } catch (const EvalError&) {
                continue;
            }
            REQUIRE(std::abs(direct - via) <= 1e-12 * std::max(1.0, std::abs(via)));
        }
    }
}
