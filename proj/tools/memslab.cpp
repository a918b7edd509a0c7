// Batch front door: criterion scans, branch continuation, stability checks,
// singular-profile certification, and weight verification, all emitting
// versioned JSON reports (CSV for branch tables).

#include "memslab/hardy_rellich.hpp"
#include "memslab/navier.hpp"
#include "memslab/report.hpp"
#include "memslab/stability.hpp"
#include "memslab/subsolutions.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace memslab;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

struct CommonOpts {
    int dimension = 0;
    std::string dimension_range;
    double beta = 1.0;
    double tau = 0.0;
    std::size_t grid_size = 0;  // 0 = per-command default
    double r_min = 1e-8;
    double tolerance = 0.02;
    int k_max = 0;
    std::string output = "json";
    std::string out_file;
    std::string grading = "auto";
};

// Spectral/branch work needs mild grids: the fourth-order operator scales
// like 1/h^4 and aggressive origin refinement at small N drowns the bottom
// eigenvalue in roundoff. "auto" picks uniform for N <= 4, geometric above.
GridPtr make_solver_grid(const CommonOpts& o, int n, std::size_t m) {
    std::string g = o.grading;
    if (g == "auto") g = n <= 4 ? "uniform" : "geometric";
    if (g == "uniform") return make_grid(m, 1.0 / double(m), Grading::Power, 1.0);
    if (g == "power") return make_grid(m, o.r_min, Grading::Power, 2.0);
    if (g == "geometric") return make_grid(m, o.r_min, Grading::Geometric);
    throw CLI::ValidationError("unknown grading " + g);
}

std::size_t effective_grid(const CommonOpts& o, std::size_t fallback) {
    if (o.grid_size > 0) return o.grid_size;
    if (const char* env = std::getenv("MEMSLAB_GRID_SIZE")) {
        const long v = std::atol(env);
        if (v >= 16) return static_cast<std::size_t>(v);
    }
    return fallback;
}

std::vector<int> dimension_list(const CommonOpts& o, int lo_ok, int hi_ok) {
    std::vector<int> out;
    if (!o.dimension_range.empty()) {
        const auto pos = o.dimension_range.find("..");
        if (pos == std::string::npos) throw CLI::ValidationError("range must look like A..B");
        const int lo = std::stoi(o.dimension_range.substr(0, pos));
        const int hi = std::stoi(o.dimension_range.substr(pos + 2));
        if (lo > hi) throw CLI::ValidationError("empty range");
        for (int n = lo; n <= hi; ++n) out.push_back(n);
    } else if (o.dimension > 0) {
        out.push_back(o.dimension);
    } else {
        throw CLI::ValidationError("need --dimension or --dimension-range");
    }
    for (int n : out)
        if (n < lo_ok || n > hi_ok)
            throw CLI::ValidationError("dimension out of range [" + std::to_string(lo_ok) + ", " +
                                       std::to_string(hi_ok) + "]");
    return out;
}

void emit(const ReportDocument& doc, const CommonOpts& o) {
    if (!o.out_file.empty()) {
        std::ofstream f(o.out_file);
        if (!f) throw std::runtime_error("cannot open " + o.out_file);
        doc.write(f);
    } else {
        doc.write(std::cout);
    }
}

double wall_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_criterion(const CommonOpts& o) {
    const auto t0 = std::chrono::steady_clock::now();
    ReportDocument doc;
    doc.command = "criterion";
    for (int n : dimension_list(o, 5, 64)) {
        const Rational lb = lambda_bar(n), hn = h_constant(n);
        doc.results.push_back({{"N", n},
                               {"lambda_bar", to_string(lb)},
                               {"H_N", to_string(hn)},
                               {"lambda_bar_value", to_double(lb)},
                               {"H_N_value", to_double(hn)},
                               {"regular", regularity_criterion(n)}});
    }
    doc.provenance = {{"arithmetic", "exact rational"}, {"wall_time_s", wall_since(t0)}};
    emit(doc, o);
    return kExitPass;
}

int cmd_branch(const CommonOpts& o, bool with_mu1) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto dims = dimension_list(o, 2, 64);
    if (dims.size() != 1) throw CLI::ValidationError("branch takes a single --dimension");
    const int n = dims.front();
    const std::size_t m = effective_grid(o, 2000);

    ProblemParams params;
    params.dim = n;
    params.beta = o.beta;
    params.tau = o.tau;
    auto grid = make_solver_grid(o, n, m);
    RadialLaplacian op(grid, n);

    ContinuationControls cc;
    cc.compute_mu1 = with_mu1;
    BranchResult branch;
    try {
        branch = continue_branch(params, op, cc);
    } catch (const std::exception& e) {
        std::cerr << "branch: " << e.what() << '\n';
        return kExitFail;
    }

    if (o.output == "csv") {
        if (!o.out_file.empty()) {
            std::ofstream f(o.out_file);
            if (!f) throw std::runtime_error("cannot open " + o.out_file);
            write_branch_csv(f, branch);
        } else {
            write_branch_csv(std::cout, branch);
        }
        return kExitPass;
    }

    ReportDocument doc;
    doc.command = "branch";
    doc.parameters = {{"N", n}, {"beta", o.beta}, {"tau", o.tau},
                      {"grid_size", m}, {"r_min", o.r_min}};
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : branch.points) {
        nlohmann::json jp = {{"lambda", p.lambda},
                             {"sup_norm", p.sup_norm},
                             {"energy", p.energy},
                             {"inverse_cubed_mass", p.inverse_cubed_mass},
                             {"iterations", p.iterations}};
        if (p.mu1) jp["mu1"] = *p.mu1;
        pts.push_back(jp);
    }
    doc.results.push_back({{"points", pts},
                           {"lambda_star_low", branch.lambda_star_low},
                           {"lambda_star_high", branch.lambda_star_high},
                           {"eigen_upper_bound", lambda_star_upper_bound(params, op)}});
    doc.provenance = {{"grid_size", m}, {"r_min", o.r_min},
                      {"tolerance", IterationControls{}.tol}, {"wall_time_s", wall_since(t0)}};
    emit(doc, o);
    return kExitPass;
}

int cmd_stability(const CommonOpts& o, double lambda) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto dims = dimension_list(o, 2, 64);
    if (dims.size() != 1) throw CLI::ValidationError("stability takes a single --dimension");
    const int n = dims.front();
    const std::size_t m = effective_grid(o, 2000);

    ProblemParams params;
    params.dim = n;
    params.beta = o.beta;
    params.tau = o.tau;
    auto grid = make_solver_grid(o, n, m);
    RadialLaplacian op(grid, n);

    ReportDocument doc;
    doc.command = "stability";
    doc.parameters = {{"N", n}, {"beta", o.beta}, {"tau", o.tau},
                      {"lambda", lambda}, {"grid_size", m}};
    double mu1 = 0.0;
    if (lambda == 0.0) {
        mu1 = navier_eigen_smallest(params, op, {}).mu;
        doc.results.push_back({{"mu1", mu1}, {"solution", "zero"}});
    } else {
        auto sol = minimal_solution(params, op, lambda);
        if (!std::holds_alternative<BranchPoint>(sol)) {
            std::cerr << "stability: no minimal solution at lambda=" << lambda << '\n';
            return kExitFail;
        }
        const auto& bp = std::get<BranchPoint>(sol);
        mu1 = mu1_of_solution(params, op, lambda, bp.u).mu;
        doc.results.push_back({{"mu1", mu1}, {"sup_norm", bp.sup_norm},
                               {"iterations", bp.iterations}});
    }
    doc.provenance = {{"grid_size", m}, {"r_min", o.r_min}, {"wall_time_s", wall_since(t0)}};
    emit(doc, o);
    return mu1 >= 0.0 ? kExitPass : kExitFail;
}

int cmd_certify(const CommonOpts& o, std::optional<double> lambda_prime_override,
                std::optional<double> sigma_override, std::optional<double> m_override,
                const std::string& weight_override) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto dims = dimension_list(o, 9, 64);
    CertGridControls gc;
    gc.nodes = effective_grid(o, CertGridControls{}.nodes);
    gc.r_min = o.r_min;

    auto run_one = [&](int n) -> CertificateReport {
        if (!lambda_prime_override && !sigma_override && !m_override && weight_override.empty())
            return table1_verify(n, gc);
        SubSolutionSpec base = table1_spec(n);
        const Rational m = m_override ? rational_from_double(*m_override) : base.m;
        const Rational lp =
            lambda_prime_override ? rational_from_double(*lambda_prime_override) : base.lambda_prime;
        const Rational sg = sigma_override ? rational_from_double(*sigma_override) : base.sigma;
        WeightChoice wc = base.weight_choice;
        if (!weight_override.empty()) {
            if (weight_override == "classical_6") wc = WeightChoice::Classical6;
            else if (weight_override == "improved_31") wc = WeightChoice::Improved31;
            else if (weight_override == "improved_32") wc = WeightChoice::Improved32;
            else throw CLI::ValidationError("unknown weight " + weight_override);
        }
        SubSolutionSpec spec = make_subsolution_spec(n, m, lp, sg, wc);
        RadialWeight weight = build_weight(wc, n);
        auto vgrid = make_grid(1200, 1e-7, Grading::Geometric);
        RadialLaplacian vop(vgrid, n);
        verify_weight_rayleigh(n, weight, o.k_max, vop, o.tolerance);
        return certify(spec, weight, gc);
    };

    // Fan the dimensions out; assemble the report in order.
    std::vector<std::future<CertificateReport>> jobs;
    jobs.reserve(dims.size());
    for (int n : dims)
        jobs.push_back(std::async(std::launch::async, run_one, n));

    ReportDocument doc;
    doc.command = "certify";
    doc.parameters = {{"grid_size", gc.nodes}, {"r_min", gc.r_min}};
    int exit_code = kExitPass;
    std::string first_violation;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        CertificateReport rep;
        try {
            rep = jobs[i].get();
        } catch (const std::exception& e) {
            std::cerr << "certify N=" << dims[i] << ": " << e.what() << '\n';
            return kExitInvalid;
        }
        doc.results.push_back(nlohmann::json::parse(rep.to_json()));
        if (rep.verdict == Verdict::Violated && exit_code == kExitPass) {
            exit_code = kExitFail;
            first_violation = "N=" + std::to_string(dims[i]) + ": " + rep.note;
        }
        if (rep.verdict == Verdict::Inconclusive) exit_code = kExitInvalid;
    }
    doc.provenance = {{"grid_size", gc.nodes}, {"r_min", gc.r_min},
                      {"tolerance", o.tolerance}, {"wall_time_s", wall_since(t0)}};
    emit(doc, o);
    if (!first_violation.empty()) std::cerr << "first violation: " << first_violation << '\n';
    return exit_code;
}

int cmd_hr_verify(const CommonOpts& o, const std::string& weight_name) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto dims = dimension_list(o, 5, 64);
    if (dims.size() != 1) throw CLI::ValidationError("hr-verify takes a single --dimension");
    const int n = dims.front();
    const std::size_t m = effective_grid(o, 4000);

    RadialWeight weight = [&] {
        if (weight_name == "classical" || weight_name == "classical_6") return weight_classical(n);
        if (weight_name == "improved_31") return weight_improved_31(n);
        if (weight_name == "improved_32") return weight_improved_32(n);
        throw CLI::ValidationError("unknown weight " + weight_name);
    }();

    auto grid = make_grid(m, o.r_min, Grading::Geometric);
    RadialLaplacian op(grid, n);
    WeightVerification ver = verify_weight_rayleigh(n, weight, o.k_max, op, o.tolerance);

    // Companion first-order pair from the improved-weight construction,
    // checked by direct ODE integration.
    const Rational alpha(n, 2 * (n - 1));
    BesselPairSpec pair;
    pair.dim = n;
    pair.V = {PowerSum::constant(Rational(1)), PowerSum::constant(Rational(1))};
    pair.W = {PowerSum::constant(Rational((n - 2) * (n - 2), 4)),
              PowerSum({{Rational(1), Rational(2)}, {-alpha, Rational(n, 2) + 1}})};
    ODESolution ode = bessel_pair_test(pair);

    ReportDocument doc;
    doc.command = "hr-verify";
    doc.parameters = {{"N", n}, {"weight", weight.name()}, {"k_max", o.k_max},
                      {"grid_size", m}, {"tolerance", o.tolerance}};
    nlohmann::json quotients = nlohmann::json::array();
    for (double q : ver.mode_quotients) quotients.push_back(q);
    doc.results.push_back(
        {{"mode_quotients", quotients},
         {"min_quotient", ver.min_quotient},
         {"passed", ver.passed},
         {"companion_ode_verdict", ode.verdict == OdeVerdict::Positive
                                       ? "positive"
                                       : (ode.verdict == OdeVerdict::SignChange ? "sign_change"
                                                                                : "inconclusive")}});
    doc.provenance = {{"grid_size", m}, {"r_min", o.r_min},
                      {"tolerance", o.tolerance}, {"wall_time_s", wall_since(t0)}};
    emit(doc, o);
    return ver.passed ? kExitPass : kExitFail;
}

int cmd_report_merge(const std::vector<std::string>& inputs, const CommonOpts& o) {
    std::vector<ReportDocument> docs;
    for (const auto& path : inputs) {
        std::ifstream f(path);
        if (!f) {
            std::cerr << "report-merge: cannot open " << path << '\n';
            return kExitInvalid;
        }
        nlohmann::json j;
        f >> j;
        docs.push_back(ReportDocument::from_json(j));
    }
    emit(merge_reports(docs), o);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial fourth-order MEMS laboratory"};
    app.require_subcommand(1);

    CommonOpts o;
    double lambda = 0.0;
    std::optional<double> lp_override, sigma_override, m_override;
    std::string weight_override, hr_weight = "classical";
    std::vector<std::string> merge_inputs;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--dimension,-N", o.dimension, "space dimension N");
        sub->add_option("--dimension-range", o.dimension_range, "range A..B");
        sub->add_option("--beta", o.beta, "fourth-order coefficient");
        sub->add_option("--tau", o.tau, "second-order coefficient");
        sub->add_option("--grid-size", o.grid_size, "radial node count");
        sub->add_option("--r-min", o.r_min, "innermost node");
        sub->add_option("--tolerance", o.tolerance, "verification tolerance");
        sub->add_option("--k-max", o.k_max, "highest spherical-harmonic mode");
        sub->add_option("--output", o.output, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out-file", o.out_file, "write report here instead of stdout");
        sub->add_option("--grading", o.grading, "auto|uniform|power|geometric");
    };

    auto* criterion = app.add_subcommand("criterion", "regularity criterion scan");
    add_common(criterion);
    auto* branch = app.add_subcommand("branch", "minimal-solution continuation");
    add_common(branch);
    bool with_mu1 = false;
    branch->add_flag("--mu1", with_mu1, "compute mu1 along the branch");
    auto* stability = app.add_subcommand("stability", "first eigenvalue of the linearization");
    add_common(stability);
    stability->add_option("--lambda", lambda, "parameter value (0: zero potential)");
    auto* certify = app.add_subcommand("certify", "singular sub-solution certificates");
    add_common(certify);
    certify->add_option("--lambda-prime", lp_override, "override lambda'");
    certify->add_option("--sigma", sigma_override, "override sigma");
    certify->add_option("--m", m_override, "override profile exponent m");
    certify->add_option("--weight", weight_override, "override weight choice");
    auto* hr = app.add_subcommand("hr-verify", "second-order inequality verification");
    add_common(hr);
    hr->add_option("--weight", hr_weight, "classical|improved_31|improved_32");
    auto* merge = app.add_subcommand("report-merge", "merge report files");
    add_common(merge);
    merge->add_option("inputs", merge_inputs, "report files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*criterion) return cmd_criterion(o);
        if (*branch) return cmd_branch(o, with_mu1);
        if (*stability) return cmd_stability(o, lambda);
        if (*certify)
            return cmd_certify(o, lp_override, sigma_override, m_override, weight_override);
        if (*hr) return cmd_hr_verify(o, hr_weight);
        if (*merge) return cmd_report_merge(merge_inputs, o);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return kExitFail;
    }
    return kExitInvalid;
}
