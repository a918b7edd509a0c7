#pragma once

#include "memslab/rational.hpp"

#include <stdexcept>
#include <vector>

namespace memslab {

// Finite sum  sum_i c_i r^{p_i}  with exact rational coefficients and
// exponents. Exponents are kept strictly increasing and zero coefficients
// dropped, so the representation is canonical. Closed under the radial
// Laplacian, which is what makes all pointwise certificates exact.
class PowerSum {
public:
    struct Term {
        Rational coeff;
        Rational exponent;
    };

    PowerSum() = default;
    explicit PowerSum(std::vector<Term> terms);

    static PowerSum constant(const Rational& c);
    static PowerSum monomial(const Rational& c, const Rational& exponent);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    PowerSum operator+(const PowerSum& other) const;
    PowerSum operator-(const PowerSum& other) const;
    PowerSum operator*(const PowerSum& other) const;
    PowerSum scaled(const Rational& c) const;

    // d/dr termwise: c r^p -> c p r^{p-1}.
    PowerSum derivative() const;

    // Radial Laplacian in dimension N: c r^p -> c p (p + N - 2) r^{p-2}.
    PowerSum laplacian(int dim) const;
    PowerSum bilaplacian(int dim) const;

    // Compensated floating-point evaluation on (0, 1].
    double eval(double r) const;

    // Exact value at r = 1 (sum of coefficients).
    Rational eval_at_one() const;

    // Term with the smallest exponent; dominates as r -> 0.
    // Throws on the zero sum.
    Term leading_term_at_zero() const;

private:
    std::vector<Term> terms_;  // strictly increasing exponents
    void normalize();
};

inline PowerSum power_laplacian(const PowerSum& ps, int dim) { return ps.laplacian(dim); }
inline PowerSum power_bilaplacian(const PowerSum& ps, int dim) { return ps.bilaplacian(dim); }
inline double eval_powersum(const PowerSum& ps, double r) { return ps.eval(r); }

}  // namespace memslab
