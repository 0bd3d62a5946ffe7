#pragma once

#include "sge/problem.hpp"
#include "sge/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sge {

/// Everything produced between the pde and the polynomial system.
struct Derivation {
    DerivPoly reduced;  // straight after the travelling-wave substitution
    DerivPoly ode;      // after the pipeline steps, the equation the ansatz is applied to
    std::vector<std::string> notes;
    /// Number of reduce_order steps applied; the closed form needs that many integrations.
    int integrations = 0;
    BalanceResult balance;
    std::optional<Ansatz> ansatz;
    TrigPoly substituted;
    PolySystem system;
    /// True when the ode is unchanged under eta -> -eta, so cos(w) may be read as tanh(eta).
    bool reflection_symmetric = true;
};

/// Runs reduction, the configured steps, balance, ansatz and coefficient extraction.
/// Throws MethodInapplicable when no balance exists.
Derivation derive(const Problem& problem);

/// Unknowns whose value is constrained by the ansatz body (all but the speed).
std::vector<std::string> body_unknowns(const Ansatz& a);

/// Sets each branch label to the first matching [reference] case, "trivial"
/// when every body unknown is zero, and "extra" otherwise.
void label_branches(SolutionSet& set, const PolySystem& system, const Problem& problem);

/// True when every "lhs = rhs" equation of the case holds exactly at the branch.
bool branch_matches(const std::vector<std::string>& equations, const PolySystem& system, const SolutionBranch& branch);

}  // namespace sge
