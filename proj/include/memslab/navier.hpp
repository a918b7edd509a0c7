#pragma once

#include "memslab/grid.hpp"
#include "memslab/operators.hpp"
#include "memslab/problem.hpp"

#include <optional>
#include <ostream>
#include <variant>
#include <vector>

namespace memslab {

// Result of the two-stage Navier linear solve. w = -Laplacian u is the
// stage-1 unknown; keeping it makes energies and residuals cheap.
struct NavierSolution {
    GridFunction u;
    GridFunction w;        // w(1) = -gamma
    double residual = 0.0; // max norm of the composed fourth-order equation
};

// Solve beta*Delta^2 u - tau*Delta u = f, u(1) = alpha, Delta u(1) = gamma,
// factored into two second-order solves through w = -Delta u.
NavierSolution solve_navier_linear(const ProblemParams& params, const RadialLaplacian& op,
                                   const std::vector<double>& f_interior);

struct BranchPoint {
    double lambda = 0.0;
    GridFunction u;
    double sup_norm = 0.0;
    double energy = 0.0;             // int (tau |grad u|^2 + beta |Delta u|^2) r^{N-1} dr
    double inverse_cubed_mass = 0.0; // int (1-u)^{-3} r^{N-1} dr
    std::optional<double> mu1;
    int iterations = 0;
};

struct NonConvergence {
    enum class Reason { Touchdown, Stalled } reason;
    int iterations = 0;
    double last_sup = 0.0;
};

struct IterationControls {
    double tol = 1e-10;           // sup-norm of successive differences
    double residual_tol = 1e-8;   // nonlinear residual
    double safety_margin = 1e-3;  // iterates above 1 - margin count as touchdown
    int max_iter = 50000;
};

// Monotone iteration u_0 = 0, beta*Delta^2 u_n - tau*Delta u_n =
// lambda/(1-u_{n-1})^2, to the minimal solution. Monotonicity of the
// iterates is checked, not assumed. An optional warm start from a smaller
// lambda's profile keeps the iterates monotone.
std::variant<BranchPoint, NonConvergence> minimal_solution(
    const ProblemParams& params, const RadialLaplacian& op, double lambda,
    const IterationControls& controls = {}, const GridFunction* warm_start = nullptr);

struct ContinuationControls {
    double lambda_start = -1.0;  // < 0: start at 0.1 * Lemma-2.4-type bound
    double growth = 1.5;
    double rel_bracket_width = 1e-3;
    bool compute_mu1 = false;
    IterationControls iteration;
};

struct BranchResult {
    std::vector<BranchPoint> points;
    double lambda_star_low = 0.0;   // largest lambda with convergence
    double lambda_star_high = 0.0;  // smallest lambda with divergence detected
};

BranchResult continue_branch(const ProblemParams& params, const RadialLaplacian& op,
                             const ContinuationControls& controls = {});

// sup over u in (alpha, 1) of (mu1*u + C)(1-u)^2, the eigenvalue upper bound
// on the pull-in parameter; C = 0 for homogeneous data.
double lambda_star_upper_bound(const ProblemParams& params, const RadialLaplacian& op);

void write_branch_csv(std::ostream& os, const BranchResult& branch);

}  // namespace memslab
