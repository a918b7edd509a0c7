#include "memslab/power_sum.hpp"

#include <algorithm>
#include <cmath>

namespace memslab {

PowerSum::PowerSum(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

void PowerSum::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    std::vector<Term> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().exponent == t.exponent) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(t);
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Term& t) { return t.coeff == Rational(0); }),
                 merged.end());
    terms_ = std::move(merged);
}

PowerSum PowerSum::constant(const Rational& c) { return monomial(c, Rational(0)); }

PowerSum PowerSum::monomial(const Rational& c, const Rational& exponent) {
    return PowerSum({Term{c, exponent}});
}

PowerSum PowerSum::operator+(const PowerSum& other) const {
    std::vector<Term> all = terms_;
    all.insert(all.end(), other.terms_.begin(), other.terms_.end());
    return PowerSum(std::move(all));
}

PowerSum PowerSum::operator-(const PowerSum& other) const {
    return *this + other.scaled(Rational(-1));
}

PowerSum PowerSum::operator*(const PowerSum& other) const {
    std::vector<Term> prod;
    prod.reserve(terms_.size() * other.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : other.terms_)
            prod.push_back(Term{a.coeff * b.coeff, a.exponent + b.exponent});
    return PowerSum(std::move(prod));
}

PowerSum PowerSum::scaled(const Rational& c) const {
    std::vector<Term> out = terms_;
    for (auto& t : out) t.coeff *= c;
    return PowerSum(std::move(out));
}

PowerSum PowerSum::derivative() const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        if (t.exponent == Rational(0)) continue;
        out.push_back(Term{t.coeff * t.exponent, t.exponent - Rational(1)});
    }
    return PowerSum(std::move(out));
}

PowerSum PowerSum::laplacian(int dim) const {
    if (dim < 2) throw std::invalid_argument("laplacian: dimension must be >= 2");
    std::vector<Term> out;
    for (const auto& t : terms_) {
        Rational factor = t.exponent * (t.exponent + Rational(dim - 2));
        if (factor == Rational(0)) continue;
        out.push_back(Term{t.coeff * factor, t.exponent - Rational(2)});
    }
    return PowerSum(std::move(out));
}

PowerSum PowerSum::bilaplacian(int dim) const { return laplacian(dim).laplacian(dim); }

double PowerSum::eval(double r) const {
    if (r <= 0.0) {
        for (const auto& t : terms_)
            if (t.exponent < Rational(0))
                throw std::domain_error("PowerSum::eval: r <= 0 with negative exponent");
        if (r < 0.0) throw std::domain_error("PowerSum::eval: r < 0");
    }
    // Kahan summation; individual terms can span many orders of magnitude.
    double sum = 0.0, comp = 0.0;
    for (const auto& t : terms_) {
        double term = to_double(t.coeff) * std::pow(r, to_double(t.exponent));
        double y = term - comp;
        double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sum;
}

Rational PowerSum::eval_at_one() const {
    Rational s(0);
    for (const auto& t : terms_) s += t.coeff;
    return s;
}

PowerSum::Term PowerSum::leading_term_at_zero() const {
    if (terms_.empty()) throw std::logic_error("leading_term_at_zero: zero PowerSum");
    return terms_.front();
}

}  // namespace memslab
