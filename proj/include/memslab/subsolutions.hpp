#pragma once

#include "memslab/hardy_rellich.hpp"
#include "memslab/navier.hpp"
#include "memslab/power_sum.hpp"

#include <string>

namespace memslab {

// Exact rational equal to the given double.
Rational rational_from_double(double x);

// lambda_bar = 8 (N - 2/3)(N - 8/3) / 9
Rational lambda_bar(int dim);
// H_N = N^2 (N-4)^2 / 16
inline Rational h_constant(int dim) { return hardy_constant(dim); }
// The singularity-side consistency test 2*lambda_bar <= H_N.
bool regularity_criterion(int dim);

// a_{N,m} = m(N+m-2)/D, b_{N,m} = (4/3)(N-2/3)/D with
// D = m(N+m-2) - (4/3)(N-2/3); a - b = 1 identically.
std::pair<Rational, Rational> coefficients(int dim, const Rational& m);

enum class WeightChoice { Classical6, Improved31, Improved32 };

std::string weight_choice_name(WeightChoice w);
RadialWeight build_weight(WeightChoice w, int dim);

// Singular candidate profile w_m = 1 - a r^{4/3} + b r^m together with the
// constants of the certificate it is meant to support. sigma is the
// stability constant (the certificate's second parameter; kept distinct
// from the operator coefficient beta).
struct SubSolutionSpec {
    int dim = 9;
    Rational m;
    Rational a, b;
    PowerSum profile;            // 1 - a r^{4/3} + b r^m
    PowerSum one_minus_profile;  // a r^{4/3} - b r^m, cancellation-free near 0
    Rational lambda_prime;
    Rational sigma;
    WeightChoice weight_choice = WeightChoice::Classical6;
};

SubSolutionSpec make_subsolution_spec(int dim, const Rational& m, const Rational& lambda_prime,
                                      const Rational& sigma, WeightChoice weight);

struct CertGridControls {
    std::size_t nodes = 20000;
    double r_min = 1e-8;
};

enum class Verdict { Certified, Violated, Inconclusive };

struct CertificateReport {
    int dim = 0;
    double m = 0.0;
    double lambda_prime = 0.0;
    double sigma = 0.0;
    std::string weight_name;

    // Interior sampled margins (nodes with r < 1); both must be >= 0.
    double pde_margin = 0.0;             // min of lambda' - Delta^2 w (1-w)^2
    double pde_margin_radius = 0.0;
    double stability_margin = 0.0;       // min of W (1-w)^3 - 2 sigma
    double stability_margin_radius = 0.0;

    // Exact endpoint analysis.
    Rational pde_limit_zero;        // lambda' - a^3 lambda_bar
    Rational stability_limit_zero;  // a^3 c_W - 2 sigma (c_W leading weight coeff)
    bool stability_infinite_at_one = false;
    Rational pde_value_one;         // lambda' - Delta^2 w(1)
    Rational stability_value_one;   // W(1) - 2 sigma (when finite)
    Rational bc_value, bc_laplacian;
    bool singular_at_origin = false;

    std::size_t grid_nodes = 0;
    double grid_r_min = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    std::string note;

    std::string to_json() const;
};

CertificateReport certify(const SubSolutionSpec& spec, const RadialWeight& weight,
                          const CertGridControls& grid = {});

// Theorem-5.2 case split: the (m, lambda', sigma, weight) combination for a
// given dimension N >= 9.
SubSolutionSpec table1_spec(int dim);

// Build the dimension's spec, verify its weight, and certify. The
// verification grid is deliberately modest; certify itself is sampling.
CertificateReport table1_verify(int dim, const CertGridControls& grid = {});

// Largest tau/beta such that -rho * Delta w <= (lambda'' - lambda')/(1-w)^2
// pointwise on (0,1); +infinity when -Delta w <= 0 everywhere.
double tau_beta_margin(int dim, const SubSolutionSpec& spec, double lambda_second,
                       const CertGridControls& grid = {});

// Re-run the pointwise inequality with the tau term folded in:
// min of lambda'' - (Delta^2 w - rho * Delta w)(1-w)^2 over the grid.
double tau_certified_margin(int dim, const SubSolutionSpec& spec, double lambda_second,
                            double rho, const CertGridControls& grid = {});

struct TouchdownDiagnostic {
    double C = 0.0;               // (lambda_high / (beta lambda_bar))^{1/3}
    double max_signed_slack = 0.0;  // max of (1 - u) - C r^{4/3}; diagnostic only
    double radius_of_max = 0.0;
};

TouchdownDiagnostic touchdown_profile_check(const BranchResult& branch, int dim, double beta);

}  // namespace memslab
