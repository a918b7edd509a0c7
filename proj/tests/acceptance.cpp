// Acceptance gate: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Each criterion runs inside its stated time budget.

#include "memslab/hardy_rellich.hpp"
#include "memslab/navier.hpp"
#include "memslab/stability.hpp"
#include "memslab/subsolutions.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

using namespace memslab;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool ok, double seconds, const std::string& detail) {
    std::printf("[%s] criterion %d: %-34s (%.2f s) %s\n", ok ? "PASS" : "FAIL", idx, name,
                seconds, detail.c_str());
    if (!ok) ++g_failures;
}

void criterion_with_timer(int idx, const char* name,
                          const std::function<std::pair<bool, std::string>()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        auto [res, d] = body();
        ok = res;
        detail = d;
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(idx, name, ok, dt, detail);
}

// 1. Exact critical-dimension scan.
std::pair<bool, std::string> c1() {
    for (int n = 5; n <= 8; ++n)
        if (regularity_criterion(n)) return {false, "false positive at N=" + std::to_string(n)};
    for (int n = 9; n <= 40; ++n)
        if (!regularity_criterion(n)) return {false, "false negative at N=" + std::to_string(n)};
    if (lambda_bar(9) != rat(3800, 81)) return {false, "lambda_bar(9) mismatch"};
    if (h_constant(9) != rat(2025, 16)) return {false, "H_9 mismatch"};
    if (2 * lambda_bar(8) <= h_constant(8)) return {false, "N=8 should fail the criterion"};
    return {true, "exact rational scan 5..40"};
}

// 2. Exact coefficient identities.
std::pair<bool, std::string> c2() {
    int checked = 0;
    for (int n = 5; n <= 40; ++n) {
        for (Rational m : {rat(2), rat(14, 5), rat(3)}) {
            // skip combinations outside the admissible D > 0 region
            if (m * (rat(n) + m - 2) <= rat(4, 3) * (rat(n) - rat(2, 3))) continue;
            auto [a, b] = coefficients(n, m);
            if (a - b != rat(1)) return {false, "a-b != 1"};
            PowerSum w({{rat(1), rat(0)}, {-a, rat(4, 3)}, {b, m}});
            if (w.eval_at_one() != rat(0)) return {false, "w(1) != 0"};
            if (w.laplacian(n).eval_at_one() != rat(0)) return {false, "Delta w(1) != 0"};
            ++checked;
        }
    }
    return {true, std::to_string(checked) + " (N, m) pairs, all exact"};
}

// 3. Table reproduction across the three dimension regimes.
std::pair<bool, std::string> c3() {
    double min_pde = 1e300, min_stab = 1e300;
    for (int n = 9; n <= 40; ++n) {
        auto rep = table1_verify(n);
        if (rep.verdict != Verdict::Certified)
            return {false, "N=" + std::to_string(n) + " not certified: " + rep.note};
        if (!(rep.pde_margin > 0.0) || !(rep.stability_margin > 0.0))
            return {false, "N=" + std::to_string(n) + " margin not strictly positive"};
        if (!(rep.pde_limit_zero > Rational(0)))
            return {false, "N=" + std::to_string(n) + " origin limit not positive"};
        min_pde = std::min(min_pde, rep.pde_margin);
        min_stab = std::min(min_stab, rep.stability_margin);
    }
    // large-dimension rule internals
    auto s35 = table1_spec(35);
    if (!(s35.a < rat(3))) return {false, "a_{35,2} >= 3"};
    if (!(27 * lambda_bar(35) < h_constant(35) / 2)) return {false, "27 lb >= H_35/2"};
    char buf[128];
    std::snprintf(buf, sizeof buf, "N=9..40 certified, min margins pde %.3g stab %.3g",
                  min_pde, min_stab);
    return {true, buf};
}

// 4. Discrete Hardy-Rellich quotient behavior at N = 16.
std::pair<bool, std::string> c4() {
    const int n = 16;
    auto wfn = [](double r) { return 2304.0 / std::pow(r, 4); };  // H_16
    RadialLaplacian op4(make_grid(4000, 1e-8, Grading::Geometric), n);
    const double q4 = rayleigh_min_mode(n, 0, {}, wfn, op4);
    if (!(q4 >= 0.98)) return {false, "M=4000 quotient " + std::to_string(q4)};
    RadialLaplacian op16(make_grid(16000, 1e-8, Grading::Geometric), n);
    const double q16 = rayleigh_min_mode(n, 0, {}, wfn, op16);
    if (!(q16 >= 0.995)) return {false, "M=16000 quotient " + std::to_string(q16)};
    if (!(q16 >= q4 - 1e-6)) return {false, "quotient decreased under refinement"};
    auto inflated = [](double r) { return 1.05 * 2304.0 / std::pow(r, 4); };
    const double qi = rayleigh_min_mode(n, 0, {}, inflated, op16);
    if (!(qi < 1.0)) return {false, "1.05 H_N not rejected: " + std::to_string(qi)};
    char buf[128];
    std::snprintf(buf, sizeof buf, "q(4000)=%.4f q(16000)=%.4f inflated=%.4f", q4, q16, qi);
    return {true, buf};
}

// 5. Bessel-pair ODE verdicts against the Euler-equation discriminant.
std::pair<bool, std::string> c5() {
    const int n = 10;
    const double crit = (n - 2) * (n - 2) / 4.0;
    auto make_euler = [&](double c) {
        BesselPairSpec s;
        s.dim = n;
        s.V = {PowerSum::constant(rat(1)), PowerSum::constant(rat(1))};
        s.W = {PowerSum::constant(rational_from_double(c)), PowerSum::monomial(rat(1), rat(2))};
        return s;
    };
    for (double f : {0.5, 1.0}) {
        auto sol = bessel_pair_test(make_euler(f * crit));
        if (sol.verdict != OdeVerdict::Positive)
            return {false, "factor " + std::to_string(f) + " not positive"};
    }
    auto above = bessel_pair_test(make_euler(1.05 * crit));
    if (above.verdict != OdeVerdict::SignChange) return {false, "5% above critical: no sign change"};

    // Rayleigh agreement: the discrete first-order quotient for W = c/r^2 is
    // (N-2)^2/4 / c, within the 2% verification band.
    RadialLaplacian op(make_grid(6000, 1e-8, Grading::Geometric), n);
    FirstOrderForm half;
    half.V = [](double) { return 1.0; };
    half.W = [&](double r) { return 0.5 * crit / (r * r); };
    const double q_half = rayleigh_min_first_order(n, half, op);
    if (!(q_half >= 2.0 * (1.0 - 0.02))) return {false, "half-critical quotient too small"};
    FirstOrderForm at;
    at.V = [](double) { return 1.0; };
    at.W = [&](double r) { return crit / (r * r); };
    const double q_at = rayleigh_min_first_order(n, at, op);
    if (!(q_at >= 1.0 - 0.02)) return {false, "critical quotient below band"};
    char buf[128];
    std::snprintf(buf, sizeof buf, "verdicts match discriminant; q(c/2)=%.3f q(c)=%.3f",
                  q_half, q_at);
    return {true, buf};
}

// 6. Spectral cross-check mu1 ~ pi^4 at N = 3.
std::pair<bool, std::string> c6() {
    const double pi4 = std::pow(std::numbers::pi, 4);
    ProblemParams p;
    p.dim = 3;
    auto grid_of = [](std::size_t m) { return make_grid(m, 1.0 / double(m), Grading::Power, 1.0); };
    RadialLaplacian op(grid_of(2000), 3);
    const double mu = navier_eigen_smallest(p, op, {}).mu;
    if (!(std::abs(mu - pi4) <= 0.005 * pi4)) return {false, "mu=" + std::to_string(mu)};
    double err[3];
    const std::size_t ms[3] = {250, 500, 1000};
    for (int k = 0; k < 3; ++k) {
        RadialLaplacian o(grid_of(ms[k]), 3);
        err[k] = std::abs(navier_eigen_smallest(p, o, {}).mu - pi4);
    }
    const double order1 = std::log2(err[0] / err[1]);
    const double order2 = std::log2(err[1] / err[2]);
    if (!(order1 >= 1.8 && order2 >= 1.8))
        return {false, "orders " + std::to_string(order1) + ", " + std::to_string(order2)};
    char buf[128];
    std::snprintf(buf, sizeof buf, "mu=%.4f (pi^4=%.4f), orders %.2f, %.2f", mu, pi4, order1,
                  order2);
    return {true, buf};
}

// 7. Branch behavior at N = 9.
std::pair<bool, std::string> c7() {
    ProblemParams p;
    p.dim = 9;
    auto run_branch = [&](std::size_t m) {
        RadialLaplacian op(make_grid(m, 1e-8, Grading::Geometric), 9);
        ContinuationControls cc;
        cc.compute_mu1 = true;
        return continue_branch(p, op, cc);
    };
    auto branch = run_branch(1200);
    if (branch.points.size() < 3) return {false, "too few branch points"};
    if (!(branch.lambda_star_high <= 254.0))
        return {false, "bracket " + std::to_string(branch.lambda_star_high) + " > 254"};
    double max_energy = 0.0, max_mass = 0.0;
    for (std::size_t i = 0; i < branch.points.size(); ++i) {
        const auto& b = branch.points[i];
        if (!b.mu1 || !(*b.mu1 > 0.0)) return {false, "mu1 not positive along branch"};
        max_energy = std::max(max_energy, b.energy);
        max_mass = std::max(max_mass, b.inverse_cubed_mass);
        if (i == 0) continue;
        const auto& a = branch.points[i - 1];
        if (!(b.lambda > a.lambda && b.sup_norm > a.sup_norm))
            return {false, "branch not monotone in lambda/sup"};
        for (std::size_t j = 0; j < b.u.values.size(); ++j)
            if (b.u.values[j] < a.u.values[j] - 1e-9)
                return {false, "pointwise monotonicity violated"};
        if (!(*b.mu1 <= *a.mu1 * (1.0 + 1e-6))) return {false, "mu1 increased along branch"};
    }
    // stability of the extremes under one grid doubling
    auto fine = run_branch(2400);
    double fine_energy = 0.0, fine_mass = 0.0;
    for (const auto& b : fine.points) {
        fine_energy = std::max(fine_energy, b.energy);
        fine_mass = std::max(fine_mass, b.inverse_cubed_mass);
    }
    if (std::abs(fine_energy - max_energy) > 0.05 * max_energy)
        return {false, "energy unstable under doubling"};
    if (std::abs(fine_mass - max_mass) > 0.05 * max_mass)
        return {false, "(1-u)^-3 mass unstable under doubling"};
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "bracket [%.2f, %.2f], %zu points, max energy %.3g, max mass %.3g",
                  branch.lambda_star_low, branch.lambda_star_high, branch.points.size(),
                  max_energy, max_mass);
    return {true, buf};
}

// 8. tau/beta perturbation at N = 9, lambda'' = 250.
std::pair<bool, std::string> c8() {
    auto spec = table1_spec(9);
    const double rho = tau_beta_margin(9, spec, 250.0, {});
    if (!(rho > 0.0) || !std::isfinite(rho)) return {false, "margin " + std::to_string(rho)};
    const double m = tau_certified_margin(9, spec, 250.0, 0.5 * rho, {});
    if (!(m >= 0.0)) return {false, "re-certification at rho/2 failed: " + std::to_string(m)};
    char buf[128];
    std::snprintf(buf, sizeof buf, "rho_max=%.3e, margin at rho/2 = %.3e", rho, m);
    return {true, buf};
}

}  // namespace

int main() {
    criterion_with_timer(1, "critical-dimension scan", c1);
    criterion_with_timer(2, "coefficient identities", c2);
    criterion_with_timer(3, "table reproduction", c3);
    criterion_with_timer(4, "Hardy-Rellich constants", c4);
    criterion_with_timer(5, "Bessel-pair oracle agreement", c5);
    criterion_with_timer(6, "spectral cross-check", c6);
    criterion_with_timer(7, "branch behavior", c7);
    criterion_with_timer(8, "perturbation margin", c8);
    if (g_failures == 0) {
        std::printf("acceptance: all 8 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
