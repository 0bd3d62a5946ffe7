#pragma once

#include "sge/solver.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sge {

class RealizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// coeff * sech(eta)^a * tanh(eta)^b
struct TrigTerm {
    int a = 0;
    int b = 0;
    Expr coeff;
};

/// Travelling-wave solution as an expression in the symbol "eta".
struct ClosedForm {
    Expr expression;
    /// Expansion in sech/tanh monomials; empty once integrated.
    std::vector<TrigTerm> basis;
    WaveFrame frame;
    /// Value of the frame speed (the speed symbol itself when it is free).
    Expr speed;
    std::string dependent = "u";

    /// eta in the original coordinates with the speed substituted.
    Expr eta() const;
    Expr in_coordinates() const;
};

struct AntiderivEntry {
    int a = 0;
    int b = 0;
    Expr integrand;
    Expr antiderivative;
};

/// sech^a tanh^b -> zero-constant antiderivative, for the monomials the
/// order-two ansatz produces.
const std::vector<AntiderivEntry>& antideriv_table();

/// Reads the ansatz body with sin(w) = sech(eta) and cos(w) = tanh(eta), or
/// cos(w) = -tanh(eta) when `negate_c` is set. `values` binds every body unknown.
ClosedForm realize(const Ansatz& ansatz, const std::map<std::string, Expr>& values, const WaveFrame& frame,
                   const std::string& dependent = "u", bool negate_c = false);
/// Same, with the values taken from a solved branch. Throws RealizeError when
/// a body unknown is free or the branch is unresolved.
ClosedForm realize(const Ansatz& ansatz, const SolutionBranch& branch, const WaveFrame& frame,
                   const std::string& dependent = "u", bool negate_c = false);

/// Term-wise antiderivative in eta of a basis expansion.
ClosedForm integrate_trig(const ClosedForm& v);

struct VerificationReport {
    double max_residual = 0;
    int points = 0;
    std::vector<std::string> failures;
    double tolerance = 1e-8;
    bool passed() const { return failures.empty() && max_residual <= tolerance; }
};

/// Residual of the pde at `npoints` seeded random points with coordinates in
/// [-2, 2], |eta| <= 3 and eta kept 0.5 away from the poles of sech and tanh.
/// `params` binds parameters and any symbol left free in the closed form.
VerificationReport verify_numeric_residual(const Expr& pde, const ClosedForm& sol, const EvalContext& params,
                                           int npoints = 200, double tol = 1e-8, std::uint64_t seed = 20240917);

bool verify_symbolic(const PolySystem& system, const SolutionBranch& branch);

struct GridAxis {
    std::string name;
    double lo = 0;
    double hi = 0;
    int count = 0;
    double at(int k) const { return count == 1 ? lo : lo + (hi - lo) * k / (count - 1); }
};

/// One axis ("eta" or a coordinate) or two coordinate axes; coordinates not
/// on an axis take their `fixed` value, 0 when absent.
struct GridSpec {
    std::vector<GridAxis> axes;
    std::vector<std::pair<std::string, double>> fixed;
};

struct PlotGrid {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

PlotGrid sample_plot_data(const ClosedForm& sol, const EvalContext& params, const GridSpec& grid);

}  // namespace sge
