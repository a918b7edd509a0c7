#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "memslab/navier.hpp"
#include "memslab/stability.hpp"

#include <cmath>
#include <variant>

using namespace memslab;

namespace {
GridPtr solver_grid(std::size_t m = 1200) { return make_grid(m, 1e-8, Grading::Geometric); }
}  // namespace

TEST_CASE("zero load with homogeneous data gives the zero solution") {
    ProblemParams p;
    p.dim = 9;
    RadialLaplacian op(solver_grid(), 9);
    std::vector<double> f(op.interior_count(), 0.0);
    auto sol = solve_navier_linear(p, op, f);
    for (double v : sol.u.values) CHECK(std::abs(v) < 1e-14);
    CHECK(sol.residual < 1e-12);
}

TEST_CASE("inhomogeneous boundary data reproduces 1 - r^{4/3} at N = 9") {
    // u = 1 - r^{4/3} solves Delta^2 u = lambda_bar r^{-8/3} with
    // u(1) = 0, Delta u(1) = -(4/3)(N - 2/3) = -100/9.
    const int n = 9;
    ProblemParams p;
    p.dim = n;
    p.alpha = 0.0;
    p.gamma = -100.0 / 9.0;
    auto g = solver_grid(4000);
    RadialLaplacian op(g, n);
    const double lb = 3800.0 / 81.0;
    std::vector<double> f(op.interior_count());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = lb * std::pow(g->node(i), -8.0 / 3.0);
    auto sol = solve_navier_linear(p, op, f);
    double emax = 0.0;
    for (std::size_t i = 0; i < sol.u.values.size(); ++i)
        emax = std::max(emax, std::abs(sol.u.values[i] - (1.0 - std::pow(g->node(i), 4.0 / 3.0))));
    CHECK(emax < 5e-3);
}

TEST_CASE("two-stage solve composes to the fourth-order equation") {
    ProblemParams p;
    p.dim = 6;
    p.beta = 2.0;
    p.tau = 0.5;
    auto g = solver_grid(800);
    RadialLaplacian op(g, 6);
    std::vector<double> f(op.interior_count());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::cos(3.0 * g->node(i));
    auto sol = solve_navier_linear(p, op, f);
    CHECK(sol.residual < 1e-7 * (1.0 / std::pow(g->node(1) - g->node(0), 2)));
    CHECK(sol.w.values.back() == 0.0);  // w(1) = -gamma = 0
}

TEST_CASE("minimal solution at small lambda is small and positive") {
    ProblemParams p;
    p.dim = 9;
    RadialLaplacian op(solver_grid(), 9);
    auto res = minimal_solution(p, op, 1.0);
    REQUIRE(std::holds_alternative<BranchPoint>(res));
    const auto& bp = std::get<BranchPoint>(res);
    CHECK(bp.sup_norm < 0.05);
    for (double v : bp.u.values) CHECK(v >= -1e-14);
    CHECK(bp.lambda == 1.0);
    CHECK(bp.iterations < 50);
}

TEST_CASE("supercritical lambda is reported as non-convergent, N = 9") {
    // 300 exceeds the pull-in value (bracketed below 254).
    ProblemParams p;
    p.dim = 9;
    RadialLaplacian op(solver_grid(), 9);
    auto res = minimal_solution(p, op, 300.0);
    REQUIRE(std::holds_alternative<NonConvergence>(res));
}

TEST_CASE("branch continuation at N = 9: monotone, stable, bracketed") {
    ProblemParams p;
    p.dim = 9;
    RadialLaplacian op(solver_grid(), 9);
    ContinuationControls cc;
    cc.compute_mu1 = true;
    auto branch = continue_branch(p, op, cc);

    REQUIRE(branch.points.size() >= 3);
    CHECK(branch.lambda_star_low < branch.lambda_star_high);
    CHECK(branch.lambda_star_high <= 254.0);

    for (std::size_t i = 1; i < branch.points.size(); ++i) {
        const auto& a = branch.points[i - 1];
        const auto& b = branch.points[i];
        CHECK(b.lambda > a.lambda);
        CHECK(b.sup_norm > a.sup_norm);
        // pointwise monotonicity in lambda
        for (std::size_t j = 0; j < b.u.values.size(); ++j)
            CHECK(b.u.values[j] >= a.u.values[j] - 1e-9);
        REQUIRE(a.mu1.has_value());
        REQUIRE(b.mu1.has_value());
        CHECK(*b.mu1 <= *a.mu1 + 1e-6 * std::abs(*a.mu1));
    }
    for (const auto& pt : branch.points) CHECK(*pt.mu1 > 0.0);
}

TEST_CASE("eigenvalue upper bound dominates the computed bracket") {
    ProblemParams p;
    p.dim = 9;
    RadialLaplacian op(solver_grid(), 9);
    const double bound = lambda_star_upper_bound(p, op);
    auto branch = continue_branch(p, op, {});
    CHECK(branch.lambda_star_high <= bound * (1.0 + 1e-9));
}

TEST_CASE("branch CSV round-trips header and row count") {
    ProblemParams p;
    p.dim = 9;
    RadialLaplacian op(solver_grid(600), 9);
    auto branch = continue_branch(p, op, {});
    std::ostringstream os;
    write_branch_csv(os, branch);
    const std::string out = os.str();
    CHECK(out.rfind("lambda,sup_norm,energy,inverse_cubed_mass,mu1,iterations\n", 0) == 0);
    const auto rows = std::count(out.begin(), out.end(), '\n');
    CHECK(std::size_t(rows) == branch.points.size() + 1);
}

TEST_CASE("invalid parameters are rejected") {
    ProblemParams p;
    p.dim = 9;
    p.gamma = 0.5;  // inadmissible: gamma must be <= 0
    RadialLaplacian op(solver_grid(600), 9);
    std::vector<double> f(op.interior_count(), 0.0);
    CHECK_THROWS_AS(solve_navier_linear(p, op, f), std::invalid_argument);
    ProblemParams q;
    q.dim = 9;
    CHECK_THROWS_AS(minimal_solution(q, op, -1.0), std::invalid_argument);
}
