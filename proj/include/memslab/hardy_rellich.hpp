#pragma once

#include "memslab/kernels.hpp"
#include "memslab/operators.hpp"
#include "memslab/power_sum.hpp"
#include "memslab/stability.hpp"

#include <optional>
#include <string>
#include <vector>

namespace memslab {

// N^2 (N-4)^2 / 16, the classical Hardy-Rellich constant.
Rational hardy_constant(int dim);

// Exact quotient of power sums, num(r)/den(r).
struct PowerQuotient {
    PowerSum num;
    PowerSum den;

    double eval(double r) const { return num.eval(r) / den.eval(r); }
    // Logarithmic derivative (num/den)'/(num/den) = num'/num - den'/den.
    double log_derivative(double r) const;
    // Leading behavior c r^e as r -> 0.
    PowerSum::Term leading_term_at_zero() const;
};

enum class WeightProvenance { Unverified, OdePositivity, Rayleigh, Both };

// Evaluable radial weight W(r) = sum of exact power-sum quotients, with
// leading-order metadata at the endpoints.
class RadialWeight {
public:
    RadialWeight(std::vector<PowerQuotient> parts, std::string name);

    double operator()(double r) const;
    const std::vector<PowerQuotient>& parts() const { return parts_; }
    const std::string& name() const { return name_; }

    // c r^e as r -> 0 (summed over parts sharing the smallest exponent).
    PowerSum::Term leading_term_at_zero() const { return lead0_; }

    bool verified() const { return provenance_ != WeightProvenance::Unverified; }
    WeightProvenance provenance() const { return provenance_; }
    void mark_verified(WeightProvenance p);

private:
    std::vector<PowerQuotient> parts_;
    std::string name_;
    PowerSum::Term lead0_;
    WeightProvenance provenance_ = WeightProvenance::Unverified;

    void check_positive() const;
};

RadialWeight weight_classical(int dim);    // H_N / r^4
RadialWeight weight_improved_31(int dim);  // two-term weight, N >= 5
RadialWeight weight_improved_32(int dim);  // K(r)-based weight, N >= 7

struct BesselPairSpec {
    PowerQuotient V;
    PowerQuotient W;
    int dim = 5;
    // Theorem-hypothesis flags, decided by exact leading-exponent analysis:
    // int_0 dr/(r^{N-1}V) must diverge and int_0 r^{N-1}V must converge.
    bool hypothesis_divergence() const;
    bool hypothesis_convergence() const;
};

enum class OdeVerdict { Positive, SignChange, Inconclusive };

struct ODESolution {
    std::vector<std::pair<double, double>> samples;  // (r, y)
    OdeVerdict verdict = OdeVerdict::Inconclusive;
    std::optional<double> first_sign_change;
};

// Integrate y'' + ((N-1)/r + V'/V) y' + (W/V) y = 0 from r0 = 1e-8 on the
// branch picked by the local indicial exponent, and report positivity. A
// Positive verdict is numerical evidence for the Bessel-pair property.
ODESolution bessel_pair_test(const BesselPairSpec& spec);

struct WeightVerification {
    std::vector<double> mode_quotients;  // k = 0..k_max
    double min_quotient = 0.0;
    bool passed = false;
    double tolerance = 0.02;
};

// Mode-wise Rayleigh verification of int (Delta u)^2 >= int W u^2:
// each mode-k quotient must be >= 1 - tolerance.
WeightVerification verify_weight_rayleigh(int dim, RadialWeight& weight, int k_max,
                                          const RadialLaplacian& op, double tolerance = 0.02);

// First-order companions: inequality with weight ((N-2)^2/4)/(r^2 - a r^{N/2+1})
// under x(1) = 0, and its free-boundary variant with the (N-1)x(1)^2 term.
double first_order_quotient_interior(int dim, const RadialLaplacian& op);
double first_order_quotient_boundary(int dim, const RadialLaplacian& op);

}  // namespace memslab
