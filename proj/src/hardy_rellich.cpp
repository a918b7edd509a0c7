#include "memslab/hardy_rellich.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace memslab {

Rational hardy_constant(int dim) {
    if (dim < 5) throw std::invalid_argument("hardy_constant: need N >= 5");
    const Rational n(dim);
    return n * n * (n - 4) * (n - 4) / 16;
}

double PowerQuotient::log_derivative(double r) const {
    return num.derivative().eval(r) / num.eval(r) - den.derivative().eval(r) / den.eval(r);
}

PowerSum::Term PowerQuotient::leading_term_at_zero() const {
    const auto a = num.leading_term_at_zero();
    const auto b = den.leading_term_at_zero();
    return {a.coeff / b.coeff, a.exponent - b.exponent};
}

RadialWeight::RadialWeight(std::vector<PowerQuotient> parts, std::string name)
    : parts_(std::move(parts)), name_(std::move(name)) {
    if (parts_.empty()) throw std::invalid_argument("RadialWeight: no parts");
    Rational lead_exp, lead_coeff(0);
    bool first = true;
    for (const auto& p : parts_) {
        const auto t = p.leading_term_at_zero();
        if (first || t.exponent < lead_exp) {
            lead_exp = t.exponent;
            lead_coeff = t.coeff;
            first = false;
        } else if (t.exponent == lead_exp) {
            lead_coeff += t.coeff;
        }
    }
    lead0_ = {lead_coeff, lead_exp};
    check_positive();
}

double RadialWeight::operator()(double r) const {
    double s = 0.0;
    for (const auto& p : parts_) s += p.eval(r);
    return s;
}

void RadialWeight::check_positive() const {
    if (!(lead0_.coeff > Rational(0)))
        throw std::invalid_argument("RadialWeight " + name_ + ": leading coefficient at 0 not positive");
    // Dense log-spaced sampling of (0,1).
    const int samples = 4000;
    const double lo = std::log(1e-8), hi = std::log(1.0 - 1e-6);
    for (int i = 0; i <= samples; ++i) {
        const double r = std::exp(lo + (hi - lo) * double(i) / samples);
        const double v = (*this)(r);
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("RadialWeight " + name_ + ": not positive at r=" +
                                        std::to_string(r));
    }
}

void RadialWeight::mark_verified(WeightProvenance p) {
    if (provenance_ == WeightProvenance::Unverified) {
        provenance_ = p;
    } else if (provenance_ != p) {
        provenance_ = WeightProvenance::Both;
    }
}

namespace {

Rational half(int num) { return Rational(num, 2); }

// r^2 - (N/(2(N-1))) r^{N/2+1}
PowerSum denom_alpha(int dim) {
    const Rational a(dim, 2 * (dim - 1));
    return PowerSum({{Rational(1), Rational(2)}, {-a, half(dim) + 1}});
}

// r^2 - r^{N/2}
PowerSum denom_plain(int dim) {
    return PowerSum({{Rational(1), Rational(2)}, {Rational(-1), half(dim)}});
}

// phi(r) = r^{-N/2+2} + 9 r^{-2} + 10 r - 20
PowerSum phi_profile(int dim) {
    return PowerSum({{Rational(1), Rational(2) - half(dim)},
                     {Rational(9), Rational(-2)},
                     {Rational(10), Rational(1)},
                     {Rational(-20), Rational(0)}});
}

// -(phi'' + ((N-3)/r) phi'), termwise -c p (p + N - 4) r^{p-2}
PowerSum k_numerator(const PowerSum& phi, int dim) {
    std::vector<PowerSum::Term> out;
    for (const auto& t : phi.terms()) {
        const Rational f = -t.coeff * t.exponent * (t.exponent + Rational(dim - 4));
        if (f == Rational(0)) continue;
        out.push_back({f, t.exponent - 2});
    }
    return PowerSum(std::move(out));
}

}  // namespace

RadialWeight weight_classical(int dim) {
    if (dim < 5) throw std::invalid_argument("weight_classical: need N >= 5");
    PowerQuotient q{PowerSum::constant(hardy_constant(dim)), PowerSum::monomial(Rational(1), Rational(4))};
    return RadialWeight({q}, "classical_6");
}

RadialWeight weight_improved_31(int dim) {
    if (dim < 5) throw std::invalid_argument("weight_improved_31: need N >= 5");
    const Rational n(dim);
    PowerQuotient q1{PowerSum::constant((n - 2) * (n - 2) * (n - 4) * (n - 4) / 16),
                     denom_alpha(dim) * denom_plain(dim)};
    PowerQuotient q2{PowerSum::constant((n - 1) * (n - 4) * (n - 4) / 4),
                     PowerSum::monomial(Rational(1), Rational(2)) * denom_plain(dim)};
    return RadialWeight({q1, q2}, "improved_31");
}

RadialWeight weight_improved_32(int dim) {
    if (dim < 7) throw std::invalid_argument("weight_improved_32: need N >= 7");
    const Rational n(dim);
    const PowerSum phi = phi_profile(dim);
    if (phi.eval_at_one() != Rational(0))
        throw std::logic_error("weight_improved_32: phi(1) != 0");
    if (!(phi.derivative().eval_at_one() < Rational(0)))
        throw std::invalid_argument("weight_improved_32: phi'(1) not negative");
    const PowerSum numK = k_numerator(phi, dim);
    // phi and the K numerator must both be positive on (0,1).
    for (int i = 0; i <= 2000; ++i) {
        const double r = std::exp(std::log(1e-8) * (1.0 - double(i) / 2000.0) +
                                  std::log(1.0 - 1e-6) * (double(i) / 2000.0));
        if (!(phi.eval(r) > 0.0))
            throw std::invalid_argument("weight_improved_32: phi not positive at r=" + std::to_string(r));
        if (!(numK.eval(r) > 0.0))
            throw std::invalid_argument("weight_improved_32: K numerator not positive at r=" +
                                        std::to_string(r));
    }
    PowerQuotient q1{numK.scaled((n - 2) * (n - 2) / 4), phi * denom_alpha(dim)};
    PowerQuotient q2{numK.scaled(n - 1), phi * PowerSum::monomial(Rational(1), Rational(2))};
    return RadialWeight({q1, q2}, "improved_32");
}

bool BesselPairSpec::hypothesis_divergence() const {
    // int_0 dr/(r^{N-1} V) = +inf  iff  exponent of 1/(r^{N-1}V) <= -1 at 0.
    const auto v = V.leading_term_at_zero();
    return Rational(1 - dim) - v.exponent <= Rational(-1);
}

bool BesselPairSpec::hypothesis_convergence() const {
    const auto v = V.leading_term_at_zero();
    return Rational(dim - 1) + v.exponent > Rational(-1);
}

ODESolution bessel_pair_test(const BesselPairSpec& spec) {
    ODESolution out;
    if (!spec.hypothesis_divergence() || !spec.hypothesis_convergence()) return out;

    const auto vlead = spec.V.leading_term_at_zero();
    const auto wlead = spec.W.leading_term_at_zero();
    const double p0 = double(spec.dim - 1) + to_double(vlead.exponent);  // r p(r) -> p0
    const Rational q_exp = wlead.exponent - vlead.exponent;
    if (q_exp < Rational(-2)) return out;  // stronger than inverse-square: no power branch

    double slope;  // indicial exponent (real part) of the chosen branch
    if (q_exp > Rational(-2)) {
        slope = 0.0;
    } else {
        const double q0 = to_double(wlead.coeff / vlead.coeff);
        const double b = p0 - 1.0;
        const double disc = b * b - 4.0 * q0;
        slope = disc >= 0.0 ? 0.5 * (-b + std::sqrt(disc)) : -0.5 * b;
    }

    // Integrate in t = ln r: y_tt + (r p(r) - 1) y_t + r^2 (W/V) y = 0.
    using State = std::array<double, 2>;
    const bool w_zero = spec.W.num.is_zero();
    auto rhs = [&](const State& y, State& dy, double t) {
        const double r = std::exp(t);
        const double rp = double(spec.dim - 1) + r * spec.V.log_derivative(r);
        const double q = w_zero ? 0.0 : spec.W.eval(r) / spec.V.eval(r);
        dy[0] = y[1];
        dy[1] = -(rp - 1.0) * y[1] - r * r * q * y[0];
    };

    const double t0 = std::log(1e-8), t1 = std::log(1.0 - 1e-9);
    State y{1.0, slope};
    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled<ode::runge_kutta_cash_karp54<State>>(1e-12, 1e-10);

    double max_y = 1.0;
    out.samples.push_back({std::exp(t0), y[0]});
    try {
        ode::integrate_adaptive(
            stepper, rhs, y, t0, t1, 1e-3, [&](const State& s, double t) {
                const double r = std::exp(t);
                if (!out.samples.empty() && s[0] * out.samples.back().second < 0.0 &&
                    !out.first_sign_change) {
                    // locate the crossing by secant between the bracketing samples
                    const auto [rp, yp] = out.samples.back();
                    out.first_sign_change = rp + (r - rp) * yp / (yp - s[0]);
                }
                max_y = std::max(max_y, std::abs(s[0]));
                out.samples.push_back({r, s[0]});
            });
    } catch (const std::exception&) {
        out.verdict = OdeVerdict::Inconclusive;
        return out;
    }

    double min_y = std::numeric_limits<double>::infinity();
    for (const auto& [r, val] : out.samples) min_y = std::min(min_y, val);
    if (out.first_sign_change || min_y <= 0.0) {
        out.verdict = OdeVerdict::SignChange;
        if (!out.first_sign_change) {
            for (const auto& [r, val] : out.samples)
                if (val <= 0.0) { out.first_sign_change = r; break; }
        }
    } else if (min_y > 0.0) {
        // Growing branches make min/max ratios meaningless; strict
        // positivity of every sample is the criterion.
        out.verdict = OdeVerdict::Positive;
    }
    return out;
}

WeightVerification verify_weight_rayleigh(int dim, RadialWeight& weight, int k_max,
                                          const RadialLaplacian& op, double tolerance) {
    WeightVerification res;
    res.tolerance = tolerance;
    auto wfn = [&weight](double r) { return weight(r); };
    double minq = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= k_max; ++k) {
        const double q = rayleigh_min_mode(dim, k, ModeFormSpec{}, wfn, op);
        res.mode_quotients.push_back(q);
        minq = std::min(minq, q);
    }
    const double q28 = first_order_quotient_interior(dim, op);
    const double q22 = first_order_quotient_boundary(dim, op);
    res.min_quotient = std::min({minq, q28, q22});
    res.passed = res.min_quotient >= 1.0 - tolerance;
    if (res.passed) weight.mark_verified(WeightProvenance::Rayleigh);
    return res;
}

double first_order_quotient_interior(int dim, const RadialLaplacian& op) {
    const PowerSum den = denom_alpha(dim);
    const double c = to_double(Rational((dim - 2) * (dim - 2), 4));
    FirstOrderForm form;
    form.V = [](double) { return 1.0; };
    form.W = [den, c](double r) { return c / den.eval(r); };
    form.dirichlet_at_one = true;
    return rayleigh_min_first_order(dim, form, op);
}

double first_order_quotient_boundary(int dim, const RadialLaplacian& op) {
    const PowerSum den = denom_alpha(dim);
    FirstOrderForm form;
    form.V = [](double) { return 1.0; };
    form.W = [den](double r) { return 1.0 / den.eval(r); };
    form.dirichlet_at_one = false;
    form.boundary_coeff = double(dim - 1);
    return rayleigh_min_first_order(dim, form, op);
}

}  // namespace memslab
