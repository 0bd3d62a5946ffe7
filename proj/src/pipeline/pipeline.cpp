#include "sge/pipeline.hpp"

#include <algorithm>

namespace sge {

namespace {

bool reflection_symmetric(const DerivPoly& ode) {
    // eta -> -eta multiplies a term by (-1)^(order sum); the equation is
    // invariant when all terms share one parity.
    int parity = -1;
    for (const auto& [k, c] : ode.terms()) {
        int p = DerivPoly::order_sum(k) % 2;
        if (parity >= 0 && p != parity) return false;
        parity = p;
    }
    return true;
}

}  // namespace

Derivation derive(const Problem& problem) {
    Derivation d;
    std::vector<std::string> names = problem.parameters;
    names.push_back(problem.frame.speed);
    d.reduced = reduce_to_ode(parse_expr(problem.pde), problem.dependent, problem.frame, make_vars(names));
    d.ode = d.reduced;
    for (const auto& step : problem.steps) {
        if (step == "integrate_once") {
            try {
                d.ode = integrate_once(d.ode);
                d.notes.push_back("integrate_once: " + d.ode.to_string());
            } catch (const NotIntegrable& e) {
                d.notes.push_back(std::string("integrate_once skipped: ") + e.what());
            }
        } else if (step == "reduce_order") {
            d.ode = reduce_order(d.ode, d.ode.function() == "V" ? "W" : "V");
            ++d.integrations;
            d.notes.push_back("reduce_order: " + d.ode.to_string());
        }
    }
    d.reflection_symmetric = reflection_symmetric(d.ode);
    d.balance = homogeneous_balance(d.ode);
    d.ansatz.emplace(build_ansatz(d.balance.n, problem.parameters, problem.frame.speed));
    d.substituted = substitute_ansatz(d.ode, *d.ansatz);
    d.system = extract_coefficient_system(d.substituted, *d.ansatz);
    return d;
}

std::vector<std::string> body_unknowns(const Ansatz& a) {
    std::vector<std::string> out;
    for (const auto& u : a.unknowns())
        if (u != a.speed()) out.push_back(u);
    return out;
}

bool branch_matches(const std::vector<std::string>& equations, const PolySystem& system, const SolutionBranch& branch) {
    for (const auto& eq : equations) {
        auto pos = eq.find('=');
        SysPoly lhs = parse_system_poly(eq.substr(0, pos), system.unknowns, system.field);
        SysPoly rhs = pos == std::string::npos ? SysPoly(system.unknowns)
                                               : parse_system_poly(eq.substr(pos + 1), system.unknowns, system.field);
        if (!evaluate_at(lhs - rhs, system, branch).is_zero()) return false;
    }
    return true;
}

void label_branches(SolutionSet& set, const PolySystem& system, const Problem& problem) {
    for (auto& b : set.branches) {
        b.label.clear();
        if (!b.unresolved) {
            for (const auto& [name, eqs] : problem.reference) {
                if (branch_matches(eqs, system, b)) {
                    b.label = name;
                    break;
                }
            }
        }
        if (!b.label.empty()) continue;
        bool trivial = !b.unresolved;
        for (const auto& [name, a] : b.assignment) {
            if (name == problem.frame.speed) continue;
            if (a.kind != Assignment::Kind::Value || !a.value.is_zero()) trivial = false;
        }
        b.label = trivial ? "trivial" : "extra";
    }
}

}  // namespace sge
