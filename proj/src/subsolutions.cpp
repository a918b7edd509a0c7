#include "memslab/subsolutions.hpp"

#include "memslab/kernels.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>

namespace memslab {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    const double mant_d = std::frexp(x, &exp);
    const long long mant = static_cast<long long>(std::ldexp(mant_d, 53));
    exp -= 53;
    Rational r{BigInt(mant), BigInt(1)};
    BigInt two(1);
    two <<= (exp >= 0 ? exp : -exp);
    return exp >= 0 ? r * Rational(two) : r / Rational(two);
}

Rational lambda_bar(int dim) {
    if (dim < 5) throw std::invalid_argument("lambda_bar: need N >= 5");
    const Rational n(dim);
    return Rational(8) * (n - Rational(2, 3)) * (n - Rational(8, 3)) / 9;
}

bool regularity_criterion(int dim) { return 2 * lambda_bar(dim) <= h_constant(dim); }

std::pair<Rational, Rational> coefficients(int dim, const Rational& m) {
    if (!(m > Rational(4, 3))) throw std::invalid_argument("coefficients: need m > 4/3");
    const Rational n(dim);
    const Rational top_a = m * (n + m - 2);
    const Rational top_b = Rational(4, 3) * (n - Rational(2, 3));
    const Rational d = top_a - top_b;
    if (!(d > Rational(0))) throw std::invalid_argument("coefficients: invalid (N, m), D <= 0");
    return {top_a / d, top_b / d};
}

std::string weight_choice_name(WeightChoice w) {
    switch (w) {
        case WeightChoice::Classical6: return "classical_6";
        case WeightChoice::Improved31: return "improved_31";
        case WeightChoice::Improved32: return "improved_32";
    }
    return "?";
}

RadialWeight build_weight(WeightChoice w, int dim) {
    switch (w) {
        case WeightChoice::Classical6: return weight_classical(dim);
        case WeightChoice::Improved31: return weight_improved_31(dim);
        case WeightChoice::Improved32: return weight_improved_32(dim);
    }
    throw std::logic_error("build_weight: bad choice");
}

SubSolutionSpec make_subsolution_spec(int dim, const Rational& m, const Rational& lambda_prime,
                                      const Rational& sigma, WeightChoice weight) {
    auto [a, b] = coefficients(dim, m);
    if (a - b != Rational(1)) throw std::logic_error("make_subsolution_spec: a - b != 1");
    SubSolutionSpec spec;
    spec.dim = dim;
    spec.m = m;
    spec.a = a;
    spec.b = b;
    spec.profile = PowerSum({{Rational(1), Rational(0)},
                             {-a, Rational(4, 3)},
                             {b, m}});
    spec.one_minus_profile = PowerSum({{a, Rational(4, 3)}, {-b, m}});
    spec.lambda_prime = lambda_prime;
    spec.sigma = sigma;
    spec.weight_choice = weight;
    if (spec.profile.laplacian(dim).eval_at_one() != Rational(0))
        throw std::logic_error("make_subsolution_spec: Delta w(1) != 0");
    return spec;
}

CertificateReport certify(const SubSolutionSpec& spec, const RadialWeight& weight,
                          const CertGridControls& grid) {
    CertificateReport rep;
    rep.dim = spec.dim;
    rep.m = to_double(spec.m);
    rep.lambda_prime = to_double(spec.lambda_prime);
    rep.sigma = to_double(spec.sigma);
    rep.weight_name = weight.name();
    rep.grid_nodes = grid.nodes;
    rep.grid_r_min = grid.r_min;

    // Exact boundary residuals and origin behavior.
    rep.bc_value = spec.profile.eval_at_one();
    rep.bc_laplacian = spec.profile.laplacian(spec.dim).eval_at_one();
    const auto olead = spec.one_minus_profile.leading_term_at_zero();
    rep.singular_at_origin = olead.exponent > Rational(0) && olead.coeff > Rational(0);

    const PowerSum bil = spec.profile.bilaplacian(spec.dim);
    const Rational a3 = spec.a * spec.a * spec.a;
    rep.pde_limit_zero = spec.lambda_prime - a3 * lambda_bar(spec.dim);
    rep.pde_value_one = spec.lambda_prime - bil.eval_at_one();

    const auto wlead = weight.leading_term_at_zero();
    const Rational lead_exp_total = wlead.exponent + 3 * olead.exponent;
    bool stability_zero_ok;
    if (lead_exp_total < Rational(0)) {
        stability_zero_ok = wlead.coeff > Rational(0);
        rep.stability_limit_zero = Rational(0);  // margin grows without bound
        rep.note += "stability margin -> +inf at r -> 0; ";
    } else if (lead_exp_total == Rational(0)) {
        rep.stability_limit_zero = a3 * wlead.coeff - 2 * spec.sigma;
        stability_zero_ok = rep.stability_limit_zero >= Rational(0);
    } else {
        rep.stability_limit_zero = -2 * spec.sigma;
        stability_zero_ok = false;
    }

    // Weight behavior at r = 1.
    bool stability_one_ok = true;
    Rational w_at_one(0);
    rep.stability_infinite_at_one = false;
    for (const auto& part : weight.parts()) {
        if (part.den.eval_at_one() == Rational(0)) {
            rep.stability_infinite_at_one = true;
        } else {
            w_at_one += part.num.eval_at_one() / part.den.eval_at_one();
        }
    }
    if (!rep.stability_infinite_at_one) {
        rep.stability_value_one = w_at_one - 2 * spec.sigma;
        stability_one_ok = rep.stability_value_one >= Rational(0);
    } else {
        rep.stability_value_one = Rational(0);
    }

    // Sampled interior margins (r < 1); evaluations, not discretizations.
    auto gptr = make_grid(grid.nodes, grid.r_min, Grading::Geometric);
    std::span<const double> interior(gptr->nodes().data(), gptr->size() - 1);

    const double lp = rep.lambda_prime;
    auto pde_fn = [&](double r) {
        const double o = spec.one_minus_profile.eval(r);
        return lp - bil.eval(r) * o * o;
    };
    const double two_sigma = 2.0 * rep.sigma;
    auto stab_fn = [&](double r) {
        const double o = spec.one_minus_profile.eval(r);
        return weight(r) * o * o * o - two_sigma;
    };
    auto pde_min = kernels::min_scan(interior, pde_fn);
    auto stab_min = kernels::min_scan(interior, stab_fn);
    rep.pde_margin = pde_min.value;
    rep.pde_margin_radius = pde_min.arg;
    rep.stability_margin = stab_min.value;
    rep.stability_margin_radius = stab_min.arg;

    if (!weight.verified()) {
        rep.verdict = Verdict::Inconclusive;
        rep.note += "weight not verified; ";
        return rep;
    }

    const bool ok = rep.pde_margin >= 0.0 && rep.stability_margin >= 0.0 &&
                    rep.pde_limit_zero >= Rational(0) && stability_zero_ok &&
                    rep.pde_value_one >= Rational(0) && stability_one_ok &&
                    rep.bc_value == Rational(0) && rep.bc_laplacian == Rational(0) &&
                    rep.singular_at_origin && spec.sigma > spec.lambda_prime;
    if (ok) {
        rep.verdict = Verdict::Certified;
    } else {
        rep.verdict = Verdict::Violated;
        if (rep.pde_margin < 0.0)
            rep.note += "pde margin violated at r=" + std::to_string(rep.pde_margin_radius) + "; ";
        if (rep.stability_margin < 0.0)
            rep.note += "stability margin violated at r=" +
                        std::to_string(rep.stability_margin_radius) + "; ";
        if (!(rep.pde_limit_zero >= Rational(0))) rep.note += "pde limit at 0 negative; ";
        if (!stability_zero_ok) rep.note += "stability limit at 0 negative; ";
        if (!stability_one_ok) rep.note += "stability value at 1 negative; ";
        if (!(spec.sigma > spec.lambda_prime)) rep.note += "sigma <= lambda'; ";
    }
    return rep;
}

SubSolutionSpec table1_spec(int dim) {
    if (dim < 9) throw std::invalid_argument("table1_spec: need N >= 9");
    static const std::map<int, std::pair<int, int>> explicit_rows = {
        {10, {320, 367}}, {11, {405, 574}}, {12, {502, 851}},
        {13, {610, 1211}}, {14, {730, 1668}}, {15, {860, 2235}}};
    if (dim == 9)
        return make_subsolution_spec(9, Rational(14, 5), Rational(249), Rational(251),
                                     WeightChoice::Improved32);
    if (dim <= 15) {
        const auto [lp, sg] = explicit_rows.at(dim);
        return make_subsolution_spec(dim, Rational(3), Rational(lp), Rational(sg),
                                     WeightChoice::Improved31);
    }
    if (dim <= 30)
        return make_subsolution_spec(dim, Rational(3), h_constant(dim) / 2 - 1,
                                     h_constant(dim) / 2, WeightChoice::Classical6);
    return make_subsolution_spec(dim, Rational(2), 27 * lambda_bar(dim), h_constant(dim) / 2,
                                 WeightChoice::Classical6);
}

CertificateReport table1_verify(int dim, const CertGridControls& grid) {
    SubSolutionSpec spec = table1_spec(dim);
    RadialWeight weight = build_weight(spec.weight_choice, dim);
    // Modest verification grid; certify itself is pure sampling.
    auto vgrid = make_grid(1200, 1e-7, Grading::Geometric);
    RadialLaplacian op(vgrid, dim);
    verify_weight_rayleigh(dim, weight, 0, op);
    CertificateReport rep = certify(spec, weight, grid);
    if (dim >= 31 && rep.verdict == Verdict::Certified) {
        // The large-dimension chain: a_{N,2} < 3 and a^3 lb <= 27 lb < H_N/2.
        const bool chain = spec.a < Rational(3) &&
                           spec.a * spec.a * spec.a * lambda_bar(dim) <= 27 * lambda_bar(dim) &&
                           27 * lambda_bar(dim) < h_constant(dim) / 2;
        if (!chain) {
            rep.verdict = Verdict::Violated;
            rep.note += "large-N coefficient chain failed; ";
        }
    }
    return rep;
}

double tau_beta_margin(int dim, const SubSolutionSpec& spec, double lambda_second,
                       const CertGridControls& grid) {
    const double lp = to_double(spec.lambda_prime);
    const double sg = to_double(spec.sigma);
    if (!(lp <= lambda_second && lambda_second < sg))
        throw std::invalid_argument("tau_beta_margin: need lambda' <= lambda'' < sigma");
    const double slack = lambda_second - lp;
    if (slack == 0.0) return 0.0;

    const PowerSum lap = spec.profile.laplacian(dim);
    auto gptr = make_grid(grid.nodes, grid.r_min, Grading::Geometric);
    std::span<const double> interior(gptr->nodes().data(), gptr->size() - 1);
    double best = std::numeric_limits<double>::infinity();
    auto ratio = [&](double r) {
        const double neg_lap = -lap.eval(r);
        if (neg_lap <= 0.0) return std::numeric_limits<double>::infinity();
        const double o = spec.one_minus_profile.eval(r);
        return slack / (o * o * neg_lap);
    };
    best = kernels::min_scan(interior, ratio).value;
    return best;  // +inf when -Delta w <= 0 everywhere
}

double tau_certified_margin(int dim, const SubSolutionSpec& spec, double lambda_second,
                            double rho, const CertGridControls& grid) {
    const PowerSum bil = spec.profile.bilaplacian(dim);
    const PowerSum lap = spec.profile.laplacian(dim);
    auto gptr = make_grid(grid.nodes, grid.r_min, Grading::Geometric);
    std::span<const double> interior(gptr->nodes().data(), gptr->size() - 1);
    auto margin = [&](double r) {
        const double o = spec.one_minus_profile.eval(r);
        return lambda_second - (bil.eval(r) - rho * lap.eval(r)) * o * o;
    };
    return kernels::min_scan(interior, margin).value;
}

TouchdownDiagnostic touchdown_profile_check(const BranchResult& branch, int dim, double beta) {
    if (branch.points.empty())
        throw std::invalid_argument("touchdown_profile_check: empty branch");
    TouchdownDiagnostic d;
    d.C = std::cbrt(branch.lambda_star_high / (beta * to_double(lambda_bar(dim))));
    const auto& u = branch.points.back().u;
    d.max_signed_slack = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double r = u.grid->node(i);
        const double slack = (1.0 - u.values[i]) - d.C * std::pow(r, 4.0 / 3.0);
        if (slack > d.max_signed_slack) {
            d.max_signed_slack = slack;
            d.radius_of_max = r;
        }
    }
    return d;
}

std::string CertificateReport::to_json() const {
    nlohmann::json j;
    j["N"] = dim;
    j["m"] = m;
    j["lambda_prime"] = lambda_prime;
    j["sigma"] = sigma;
    j["weight"] = weight_name;
    j["margins"] = {
        {"pde", pde_margin},
        {"pde_radius", pde_margin_radius},
        {"stability", stability_margin},
        {"stability_radius", stability_margin_radius},
        {"pde_limit_zero", to_string(pde_limit_zero)},
        {"stability_limit_zero", to_string(stability_limit_zero)},
        {"pde_value_one", to_string(pde_value_one)},
        {"stability_value_one",
         stability_infinite_at_one ? std::string("+inf") : to_string(stability_value_one)},
        {"bc_value", to_string(bc_value)},
        {"bc_laplacian", to_string(bc_laplacian)},
    };
    j["grid"] = {{"nodes", grid_nodes}, {"r_min", grid_r_min}, {"grading", "geometric"}};
    j["singular_at_origin"] = singular_at_origin;
    j["verdict"] = verdict == Verdict::Certified
                       ? "certified"
                       : (verdict == Verdict::Violated ? "violated" : "inconclusive");
    if (!note.empty()) j["note"] = note;
    return j.dump(2);
}

}  // namespace memslab
