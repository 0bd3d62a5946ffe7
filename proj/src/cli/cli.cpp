#include "sge/cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace sge {

namespace {

std::string monomial_label(int a, int b) {
    std::string out;
    if (a == 1) out = "sin(w)";
    if (b > 0) {
        if (!out.empty()) out += "*";
        out += "cos(w)";
        if (b > 1) out += "^" + std::to_string(b);
    }
    return out.empty() ? "1" : out;
}

std::string assignment_text(const Assignment& a) {
    switch (a.kind) {
        case Assignment::Kind::Free: return "FREE";
        case Assignment::Kind::Open: return "OPEN";
        default: return a.value.to_string();
    }
}

Problem with_overrides(Problem p, const RunOptions& opts) {
    if (opts.seed) p.options.seed = *opts.seed;
    if (opts.tolerance) p.options.tolerance = *opts.tolerance;
    if (opts.max_pairs) p.options.max_pairs = *opts.max_pairs;
    return p;
}

std::complex<double> numeric_value(const std::string& name, const std::string& text) {
    try {
        return eval_numeric(parse_expr(text), {});
    } catch (const std::exception& e) {
        throw UsageError("value of '" + name + "' is not a number: " + text);
    }
}

Json report_branch(const Json& report, int id) {
    const Json& branches = report.at("branches");
    if (id < 1 || id > static_cast<int>(branches.size()))
        throw UsageError("no branch " + std::to_string(id) + " (report has " + std::to_string(branches.size()) + ")");
    return branches[id - 1];
}

/// Numeric context for a closed form: bindings first, other free symbols at 1/2.
EvalContext context_for(const ClosedForm& cf, const Problem& p, const EvalContext& bound) {
    EvalContext ctx = bound;
    std::set<std::string> coords(p.coordinates.begin(), p.coordinates.end());
    for (const Expr& e : {cf.in_coordinates(), cf.eta()})
        for (const auto& s : free_symbols(e))
            if (!coords.count(s) && !ctx.count(s)) ctx[s] = 0.5;
    return ctx;
}

EvalContext bind_parameters(const Problem& p, const Bindings& overrides) {
    std::map<std::string, std::string> texts(p.bindings.begin(), p.bindings.end());
    for (const auto& [k, v] : overrides) texts[k] = v;
    std::vector<std::string> missing;
    for (const auto& name : p.parameters)
        if (!texts.count(name)) missing.push_back(name);
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        throw UsageError("missing parameter bindings: " + list);
    }
    EvalContext ctx;
    for (const auto& [k, v] : texts) ctx[k] = numeric_value(k, v);
    return ctx;
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

SolveResult run_solve(const Problem& input, const RunOptions& opts) {
    Problem p = with_overrides(input, opts);
    SolveResult res;
    Json& r = res.report;
    std::ostringstream text;
    r["format"] = "sge-report/1";
    r["status"] = "ok";
    r["name"] = p.name;
    r["pde"] = p.pde;
    r["problem"] = serialize_problem(p);
    text << "problem: " << p.name << "\npde: " << p.pde << " = 0\n";

    auto fail = [&](const char* status, int code, const std::string& message) {
        r["status"] = status;
        r["error"] = message;
        text << "status: " << status << " (" << message << ")\n";
        res.exit_code = code;
        res.text = text.str();
        return res;
    };

    Derivation d;
    try {
        d = derive(p);
    } catch (const ReductionError& e) {
        return fail("method-inapplicable", kExitInapplicable, e.what());
    } catch (const ParseError& e) {
        return fail("parse-error", kExitParse, e.what());
    }
    const Ansatz& ansatz = *d.ansatz;
    r["ode"] = d.reduced.to_string();
    r["steps"] = d.notes;
    r["final_ode"] = d.ode.to_string();
    r["integrations"] = d.integrations;
    r["reflection_symmetric"] = d.reflection_symmetric;
    r["balance"] = {{"n", d.balance.n},
                    {"linear", DerivPoly::key_string(d.ode.function(), d.balance.linear_term)},
                    {"nonlinear", DerivPoly::key_string(d.ode.function(), d.balance.nonlinear_term)}};
    r["ansatz"] = ansatz.body().to_string();
    r["unknowns"] = ansatz.unknowns();
    Json eqs = Json::array();
    for (const auto& e : d.system.equations)
        eqs.push_back({{"monomial", monomial_label(e.a, e.b)}, {"equation", e.poly.to_string() + " = 0"}});
    r["system"] = eqs;

    text << "ode: " << d.reduced.to_string() << " = 0\n";
    for (const auto& n : d.notes) text << n << "\n";
    text << "balance: n = " << d.balance.n << " (" << r["balance"]["linear"].get<std::string>() << " against "
         << r["balance"]["nonlinear"].get<std::string>() << ")\n";
    text << "ansatz: " << ansatz.body().to_string() << "\n";
    text << "system (" << d.system.equations.size() << " equations):\n";
    for (const auto& e : eqs)
        text << "  " << e["monomial"].get<std::string>() << ": " << e["equation"].get<std::string>() << "\n";

    SolutionSet set;
    try {
        set = factor_split_solve(d.system, SolveOptions{p.options.max_pairs});
    } catch (const SolverCapExceeded& e) {
        return fail("cap-exceeded", kExitCapExceeded, e.what());
    }
    label_branches(set, d.system, p);
    r["solver"] = {{"groebner_calls", set.groebner_calls}, {"pairs_processed", set.pairs_processed}};

    bool any_unresolved = false, symbolic_ok = true;
    Json branches = Json::array();
    text << "branches (" << set.branches.size() << "):\n";
    for (std::size_t k = 0; k < set.branches.size(); ++k) {
        const SolutionBranch& b = set.branches[k];
        Json jb;
        jb["id"] = k + 1;
        jb["label"] = b.label;
        jb["status"] = b.unresolved ? "unresolved" : "resolved";
        Json assign = Json::object();
        for (const auto& [name, a] : b.assignment) assign[name] = assignment_text(a);
        jb["assignment"] = assign;
        jb["free"] = b.free_unknowns();
        jb["signs"] = b.signs;
        jb["conditions"] = b.conditions;
        Json residual = Json::array();
        for (const auto& q : b.residual) residual.push_back(q.to_string() + " = 0");
        jb["residual"] = residual;

        text << "  #" << k + 1 << " " << b.label << ":";
        for (const auto& [name, a] : b.assignment) text << " " << name << " = " << assignment_text(a) << ";";
        text << "\n";
        if (b.unresolved) {
            any_unresolved = true;
            jb["symbolic_check"] = nullptr;
            jb["closed_form"] = nullptr;
            text << "     UNRESOLVED:";
            for (const auto& q : residual) text << " " << q.get<std::string>() << ";";
            text << "\n";
        } else {
            bool ok = verify_symbolic(d.system, b);
            symbolic_ok = symbolic_ok && ok;
            jb["symbolic_check"] = ok;
            try {
                ClosedForm cf = realize(ansatz, b, p.frame, p.dependent, !d.reflection_symmetric);
                for (int j = 0; j < d.integrations; ++j) cf = integrate_trig(cf);
                jb["closed_form"] = {{"U", cf.expression.to_string()},
                                     {"eta", cf.eta().to_string()},
                                     {"u", canonical(cf.in_coordinates()).to_string()}};
                text << "     U(eta) = " << cf.expression.to_string() << ", eta = " << cf.eta().to_string() << "\n";
            } catch (const RealizeError& e) {
                jb["closed_form"] = nullptr;
                jb["closed_form_error"] = e.what();
                text << "     no closed form: " << e.what() << "\n";
            }
            text << "     symbolic check: " << (ok ? "pass" : "FAIL") << "\n";
        }
        branches.push_back(jb);
    }
    r["branches"] = branches;

    bool numeric_ok = true;
    std::set<std::string> bound;
    for (const auto& [k, v] : p.bindings) bound.insert(k);
    bool all_bound = std::all_of(p.parameters.begin(), p.parameters.end(), [&](const auto& n) { return bound.count(n); });
    if (all_bound) {
        VerifyResult v = run_verify(r, {}, {});
        r["verification"] = v.summary;
        text << v.text;
        numeric_ok = v.exit_code == kExitOk;
    } else {
        r["verification"] = nullptr;
        text << "numeric verification: skipped (parameters not bound)\n";
    }

    if (!symbolic_ok || !numeric_ok) {
        r["status"] = "verification-failed";
        res.exit_code = kExitVerifyFailed;
    } else if (any_unresolved) {
        r["status"] = "unresolved";
        res.exit_code = kExitUnresolved;
    }
    text << "status: " << r["status"].get<std::string>() << "\n";
    res.text = text.str();
    return res;
}

SolveResult run_solve_file(const std::string& path, const RunOptions& opts) {
    Problem p;
    try {
        p = load_problem(path);
    } catch (const ProblemError& e) {
        SolveResult res;
        res.exit_code = kExitParse;
        res.report = {{"format", "sge-report/1"}, {"status", "parse-error"}, {"error", e.what()}};
        res.text = std::string("status: parse-error (") + e.what() + ")\n";
        return res;
    }
    return run_solve(p, opts);
}

ClosedForm report_closed_form(const Json& report, int id) {
    Problem p = parse_problem(report.at("problem").get<std::string>());
    Json b = report_branch(report, id);
    if (b.at("status") != "resolved") throw RealizeError("branch " + std::to_string(id) + " is unresolved");
    Derivation d = derive(p);
    std::map<std::string, Expr> values;
    for (const auto& [name, value] : b.at("assignment").items()) {
        std::string s = value.get<std::string>();
        if (s == "FREE" || s == "OPEN") continue;
        values.emplace(name, parse_expr(s));
    }
    ClosedForm cf = realize(*d.ansatz, values, p.frame, p.dependent, !d.reflection_symmetric);
    for (int j = 0; j < d.integrations; ++j) cf = integrate_trig(cf);
    return cf;
}

VerifyResult run_verify(const Json& report, const Bindings& params, const RunOptions& opts) {
    if (!report.contains("problem") || !report.contains("branches"))
        throw UsageError("report has no problem or branches (status " + report.value("status", std::string("?")) + ")");
    Problem p = with_overrides(parse_problem(report.at("problem").get<std::string>()), opts);
    EvalContext bound = bind_parameters(p, params);
    Expr pde = parse_expr(p.pde);

    VerifyResult out;
    std::ostringstream text;
    text << "numeric verification (" << p.options.points << " points, tolerance " << format_number(p.options.tolerance)
         << ", seed " << p.options.seed << "):\n";
    Json results = Json::array();
    const Json& branches = report.at("branches");
    for (std::size_t k = 0; k < branches.size(); ++k) {
        BranchVerification bv;
        bv.id = static_cast<int>(k + 1);
        bv.label = branches[k].value("label", std::string());
        Json jr = {{"id", bv.id}, {"label", bv.label}};
        try {
            ClosedForm cf = report_closed_form(report, bv.id);
            bv.report = verify_numeric_residual(pde, cf, context_for(cf, p, bound), p.options.points,
                                                p.options.tolerance, p.options.seed);
        } catch (const RealizeError& e) {
            bv.skipped = true;
            bv.note = e.what();
        } catch (const ParseError& e) {
            bv.report.failures.push_back(std::string("malformed value: ") + e.what());
        } catch (const std::exception& e) {
            bv.report.failures.push_back(e.what());
        }
        text << "  #" << bv.id << " " << bv.label << ": ";
        if (bv.skipped) {
            jr["status"] = "skipped";
            jr["note"] = bv.note;
            text << "skipped (" << bv.note << ")\n";
        } else {
            bool ok = bv.report.passed();
            jr["status"] = ok ? "pass" : "fail";
            jr["max_residual"] = bv.report.max_residual;
            jr["points"] = bv.report.points;
            Json failures = Json::array();
            for (std::size_t j = 0; j < bv.report.failures.size() && j < 5; ++j) failures.push_back(bv.report.failures[j]);
            jr["failures"] = failures;
            text << (ok ? "pass" : "FAIL") << ", max |residual| = " << format_number(bv.report.max_residual) << "\n";
            if (!ok) {
                out.exit_code = kExitVerifyFailed;
                if (!bv.report.failures.empty()) text << "     " << bv.report.failures.front() << "\n";
            }
        }
        results.push_back(jr);
        out.branches.push_back(std::move(bv));
    }
    Json bindings = Json::object();
    for (const auto& [k, v] : bound) bindings[k] = format_number(v.real()) + (v.imag() != 0 ? "+" + format_number(v.imag()) + "*i" : "");
    out.summary = {{"bindings", bindings},
                   {"tolerance", p.options.tolerance},
                   {"points", p.options.points},
                   {"seed", p.options.seed},
                   {"passed", out.exit_code == kExitOk},
                   {"results", results}};
    text << "verification: " << (out.exit_code == kExitOk ? "pass" : "FAILED") << "\n";
    out.text = text.str();
    return out;
}

GridSpec parse_grid(const std::string& spec) {
    GridSpec g;
    std::istringstream is(spec);
    std::string item;
    auto number = [&](const std::string& s, auto& value) {
        auto res = std::from_chars(s.data(), s.data() + s.size(), value);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            throw UsageError("malformed grid spec '" + spec + "': bad number '" + s + "'");
    };
    while (std::getline(is, item, ',')) {
        if (item.empty()) throw UsageError("malformed grid spec '" + spec + "'");
        if (auto eq = item.find('='); eq != std::string::npos) {
            double v = 0;
            number(item.substr(eq + 1), v);
            g.fixed.emplace_back(item.substr(0, eq), v);
            continue;
        }
        std::vector<std::string> parts;
        std::istringstream ps(item);
        std::string part;
        while (std::getline(ps, part, ':')) parts.push_back(part);
        if (parts.size() != 4) throw UsageError("malformed grid axis '" + item + "' (expected name:lo:hi:count)");
        GridAxis ax;
        ax.name = parts[0];
        number(parts[1], ax.lo);
        number(parts[2], ax.hi);
        number(parts[3], ax.count);
        if (ax.count < 1) throw UsageError("grid axis '" + ax.name + "' has no points");
        g.axes.push_back(ax);
    }
    if (g.axes.empty() || g.axes.size() > 2) throw UsageError("grid spec needs one or two axes");
    if (g.axes.size() == 2 && (g.axes[0].name == "eta" || g.axes[1].name == "eta"))
        throw UsageError("an eta axis must be the only axis");
    return g;
}

std::string plot_csv(const PlotGrid& grid) {
    std::string out;
    for (std::size_t k = 0; k < grid.columns.size(); ++k) out += (k ? "," : "") + grid.columns[k];
    out += "\n";
    for (const auto& row : grid.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + format_number(row[k]);
        out += "\n";
    }
    return out;
}

std::string run_plot(const Json& report, int id, const GridSpec& grid, const Bindings& params) {
    Problem p = parse_problem(report.at("problem").get<std::string>());
    std::set<std::string> coords(p.coordinates.begin(), p.coordinates.end());
    for (const auto& ax : grid.axes)
        if (ax.name != "eta" && !coords.count(ax.name)) throw UsageError("grid axis '" + ax.name + "' is not a coordinate");
    for (const auto& [name, v] : grid.fixed)
        if (!coords.count(name)) throw UsageError("grid value '" + name + "' is not a coordinate");
    ClosedForm cf = report_closed_form(report, id);
    return plot_csv(sample_plot_data(cf, context_for(cf, p, bind_parameters(p, params)), grid));
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError("'" + path + "' is not a valid report: " + e.what());
    }
}

}  // namespace sge
