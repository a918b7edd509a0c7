#include "memslab/navier.hpp"

#include "memslab/quadrature.hpp"
#include "memslab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <stdexcept>

namespace memslab {

namespace {

double branch_energy(const ProblemParams& params, const GridFunction& u, const GridFunction& w) {
    const auto& grid = *u.grid;
    const auto& r = grid.nodes();
    double grad = 0.0;
    if (params.tau != 0.0) {
        for (std::size_t e = 0; e + 1 < r.size(); ++e) {
            const double h = r[e + 1] - r[e];
            const double slope = (u.values[e + 1] - u.values[e]) / h;
            grad += slope * slope * std::pow(grid.face(e), params.dim - 1) * h;
        }
    }
    GridFunction w2 = w;
    for (double& v : w2.values) v *= v;
    return params.tau * grad + params.beta * integrate_radial(w2, params.dim);
}

double inverse_cubed(const GridFunction& u, int dim) {
    GridFunction g = u;
    for (double& v : g.values) {
        const double d = 1.0 - v;
        v = 1.0 / (d * d * d);
    }
    return integrate_radial(g, dim);
}

}  // namespace

NavierSolution solve_navier_linear(const ProblemParams& params, const RadialLaplacian& op,
                                   const std::vector<double>& f_interior) {
    params.validate();
    const std::size_t n = op.interior_count();
    if (f_interior.size() != n)
        throw std::invalid_argument("solve_navier_linear: rhs size mismatch");
    for (double v : f_interior)
        if (!std::isfinite(v)) throw std::invalid_argument("solve_navier_linear: non-finite rhs");

    // Stage 1: -beta*Delta w + tau*w = f with w(1) = -gamma, w = -Delta u.
    std::vector<double> w_full = op.solve_helmholtz(params.beta, params.tau, f_interior, -params.gamma);
    // Stage 2: -Delta u = w with u(1) = alpha.
    std::vector<double> w_int(w_full.begin(), w_full.end() - 1);
    std::vector<double> u_full = op.solve_helmholtz(1.0, 0.0, w_int, params.alpha);

    // Residual of the composed fourth-order equation.
    std::vector<double> lw = op.apply_minus(w_int, -params.gamma);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        res = std::max(res, std::abs(params.beta * lw[i] + params.tau * w_int[i] - f_interior[i]));

    GridFunction u(op.grid_ptr(), std::move(u_full), params.alpha, params.gamma);
    GridFunction w(op.grid_ptr(), std::move(w_full), -params.gamma, 0.0);
    return NavierSolution{std::move(u), std::move(w), res};
}

std::variant<BranchPoint, NonConvergence> minimal_solution(
    const ProblemParams& params, const RadialLaplacian& op, double lambda,
    const IterationControls& controls, const GridFunction* warm_start) {
    params.validate();
    if (lambda < 0.0) throw std::invalid_argument("minimal_solution: lambda must be >= 0");
    const std::size_t n = op.interior_count();
    const double cap = 1.0 - controls.safety_margin;

    std::vector<double> prev(n + 1, 0.0);
    if (warm_start) {
        if (warm_start->values.size() != n + 1)
            throw std::invalid_argument("minimal_solution: warm start grid mismatch");
        prev = warm_start->values;
    }

    std::vector<double> f(n);
    for (int it = 1; it <= controls.max_iter; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            const double d = 1.0 - prev[i];
            f[i] = lambda / (d * d);
        }
        NavierSolution sol = solve_navier_linear(params, op, f);
        const auto& u = sol.u.values;

        double sup = 0.0, diff = 0.0, drop = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            sup = std::max(sup, u[i]);
            diff = std::max(diff, std::abs(u[i] - prev[i]));
            drop = std::min(drop, u[i] - prev[i]);
        }
        if (sup > cap) return NonConvergence{NonConvergence::Reason::Touchdown, it, sup};
        if (drop < -1e-9 * std::max(1.0, lambda))
            throw std::runtime_error("minimal_solution: iterates lost monotonicity");

        // Nonlinear residual: change of the right-hand side under the update.
        double nres = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = 1.0 - u[i];
            nres = std::max(nres, std::abs(lambda / (d * d) - f[i]));
        }

        if (diff < controls.tol && nres < controls.residual_tol * std::max(1.0, lambda)) {
            BranchPoint bp;
            bp.lambda = lambda;
            bp.sup_norm = sup;
            bp.energy = branch_energy(params, sol.u, sol.w);
            bp.inverse_cubed_mass = inverse_cubed(sol.u, params.dim);
            bp.iterations = it;
            bp.u = std::move(sol.u);
            return bp;
        }
        prev = u;
    }
    double sup = 0.0;
    for (double v : prev) sup = std::max(sup, v);
    return NonConvergence{NonConvergence::Reason::Stalled, controls.max_iter, sup};
}

BranchResult continue_branch(const ProblemParams& params, const RadialLaplacian& op,
                             const ContinuationControls& controls) {
    params.validate();
    double lambda = controls.lambda_start;
    if (lambda <= 0.0) lambda = 0.1 * lambda_star_upper_bound(params, op);

    BranchResult result;
    auto try_lambda = [&](double lam, const GridFunction* warm) {
        return minimal_solution(params, op, lam, controls.iteration, warm);
    };

    // First accepted point; back off if even the start diverges.
    std::variant<BranchPoint, NonConvergence> first = try_lambda(lambda, nullptr);
    int backoffs = 0;
    while (!std::holds_alternative<BranchPoint>(first)) {
        if (++backoffs > 60) throw std::runtime_error("continue_branch: no convergent start found");
        lambda *= 0.5;
        first = try_lambda(lambda, nullptr);
    }
    auto accept = [&](BranchPoint&& bp) {
        if (controls.compute_mu1)
            bp.mu1 = mu1_of_solution(params, op, bp.lambda, bp.u).mu;
        if (!result.points.empty() && bp.sup_norm <= result.points.back().sup_norm)
            throw std::runtime_error("continue_branch: sup-norm failed to increase");
        result.points.push_back(std::move(bp));
    };
    accept(std::move(std::get<BranchPoint>(first)));

    double step = 0.5 * lambda;
    double fail = std::numeric_limits<double>::infinity();
    for (int guard = 0; guard < 500; ++guard) {
        const double cur = result.points.back().lambda;
        if (std::isfinite(fail) && (fail - cur) < controls.rel_bracket_width * cur) break;
        double next = cur + step;
        if (next >= fail) next = 0.5 * (cur + fail);
        auto attempt = try_lambda(next, &result.points.back().u);
        if (std::holds_alternative<BranchPoint>(attempt)) {
            accept(std::move(std::get<BranchPoint>(attempt)));
            step *= controls.growth;
        } else {
            fail = std::min(fail, next);
            step *= 0.5;
        }
    }
    if (!std::isfinite(fail))
        throw std::runtime_error("continue_branch: never reached the fold (guard exhausted)");
    result.lambda_star_low = result.points.back().lambda;
    result.lambda_star_high = fail;
    if (!(result.lambda_star_low < result.lambda_star_high))
        throw std::logic_error("continue_branch: inconsistent bracket");
    return result;
}

double lambda_star_upper_bound(const ProblemParams& params, const RadialLaplacian& op) {
    params.validate();
    EigenResult eig = navier_eigen_smallest(params, op, {});
    const double mu1 = eig.mu;

    double C = 0.0;
    if (params.alpha != 0.0 || params.gamma != 0.0) {
        const auto& r = op.grid().nodes();
        const std::size_t n = op.interior_count();
        std::vector<double>& psi = eig.eigenfunction.values;
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += psi[i];
        if (mean < 0.0)
            for (double& v : psi) v = -v;
        const double dpsi = (psi[n] - psi[n - 1]) / (r[n] - r[n - 1]);
        std::vector<double> psi_int(psi.begin(), psi.end() - 1);
        std::vector<double> lap = op.apply_minus(psi_int, 0.0);
        for (double& v : lap) v = -v;  // Delta psi at interior nodes
        const double dlap = (0.0 - lap[n - 1]) / (r[n] - r[n - 1]);
        const double denom = integrate_radial(eig.eigenfunction, params.dim);
        C = ((params.tau * params.alpha - params.beta * params.gamma) * dpsi -
             params.beta * params.alpha * dlap) / denom;
    }

    auto g = [&](double u) { return (mu1 * u + C) * (1.0 - u) * (1.0 - u); };
    double lo = std::max(params.alpha, std::nextafter(params.alpha, 1.0));
    double best = 0.0, bestu = lo;
    const int scan = 4096;
    for (int i = 0; i <= scan; ++i) {
        const double u = lo + (1.0 - lo) * double(i) / scan;
        if (g(u) > best) { best = g(u); bestu = u; }
    }
    // golden-section polish around the scan winner
    double a = std::max(lo, bestu - (1.0 - lo) / scan);
    double b = std::min(1.0, bestu + (1.0 - lo) / scan);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int i = 0; i < 80; ++i) {
        const double x1 = b - phi * (b - a);
        const double x2 = a + phi * (b - a);
        if (g(x1) < g(x2)) a = x1; else b = x2;
    }
    return std::max(best, g(0.5 * (a + b)));
}

void write_branch_csv(std::ostream& os, const BranchResult& branch) {
    os << "lambda,sup_norm,energy,inverse_cubed_mass,mu1,iterations\n";
    os << std::setprecision(12);
    for (const auto& p : branch.points) {
        os << p.lambda << ',' << p.sup_norm << ',' << p.energy << ','
           << p.inverse_cubed_mass << ',';
        if (p.mu1) os << *p.mu1;
        os << ',' << p.iterations << '\n';
    }
}

}  // namespace memslab
