#pragma once

#include "sge/extension.hpp"
#include "sge/trig.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sge {

class SolverCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lexicographic order on the unknowns, most significant first.
struct TermOrder {
    std::vector<std::string> order;

    VarSet vars() const { return make_vars(order); }
    /// Re-expresses p over this order.
    SysPoly apply(const SysPoly& p) const;
};

struct GroebnerBasis {
    std::vector<SysPoly> basis;  // sorted by leading monomial, ascending
    TermOrder order;
    std::size_t pairs_processed = 0;

    bool is_unit() const { return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero(); }
};

SysPoly s_polynomial(const SysPoly& f, const SysPoly& g);

/// Full reduction: no monomial of the result is divisible by a basis leading monomial.
SysPoly normal_form_reduce(const SysPoly& p, const std::vector<SysPoly>& basis);

/// Reduced lex Groebner basis with monic elements. Throws SolverCapExceeded
/// after `max_pairs` critical pairs.
GroebnerBasis buchberger(const std::vector<SysPoly>& system, const TermOrder& ord, std::size_t max_pairs = 10000);

struct Assignment {
    /// Open: still constrained by the residual system of an unresolved branch.
    enum class Kind { Value, Free, Open };
    Kind kind = Kind::Value;
    ExtNumber value;

    bool is_free() const { return kind == Kind::Free; }
};

struct SolutionBranch {
    /// One entry per unknown, in system order.
    std::vector<std::pair<std::string, Assignment>> assignment;
    /// Factors chosen along the way, rendered as "f = 0".
    std::vector<std::string> conditions;
    /// Radical sign choices, e.g. "v = -sqrt(...)".
    std::vector<std::string> signs;
    bool unresolved = false;
    std::vector<SysPoly> residual;
    /// Free-form label set by callers ("case1", "extra", "trivial").
    std::string label;

    const Assignment* find(const std::string& unknown) const;
    std::vector<std::string> free_unknowns() const;
    /// Canonical text used for deduplication.
    std::string key() const;
};

struct SolveOptions {
    std::size_t max_pairs = 10000;
};

struct SolutionSet {
    std::vector<SolutionBranch> branches;
    std::size_t groebner_calls = 0;
    std::size_t pairs_processed = 0;
};

SolutionSet factor_split_solve(const PolySystem& system, const SolveOptions& opts = {});

/// Substitutes the assignment into every equation; true iff all vanish exactly.
bool check_branch(const PolySystem& system, const SolutionBranch& branch);

/// Value of p at the branch (free unknowns stay symbolic).
ExtNumber evaluate_at(const SysPoly& p, const PolySystem& system, const SolutionBranch& branch);

/// Square root of a field element when it is a perfect square.
std::optional<RationalFunction> rf_sqrt(const RationalFunction& x);

/// Proper factors of p (at least two, or one when p is a non-trivial power), or empty when none found.
std::vector<SysPoly> split_factors(const SysPoly& p);

}  // namespace sge
