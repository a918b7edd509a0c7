#include "memslab/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace memslab {

std::vector<double> thomas_solve(const Tridiag& t, std::vector<double> rhs) {
    const std::size_t n = t.size();
    if (rhs.size() != n) throw std::invalid_argument("thomas_solve: size mismatch");
    std::vector<double> c(n), d(n);
    double denom = t.diag[0];
    if (denom == 0.0) throw std::runtime_error("thomas_solve: singular pivot");
    c[0] = t.super[0] / denom;
    d[0] = rhs[0] / denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = t.diag[i] - t.sub[i] * c[i - 1];
        if (denom == 0.0) throw std::runtime_error("thomas_solve: singular pivot");
        c[i] = (i + 1 < n) ? t.super[i] / denom : 0.0;
        d[i] = (rhs[i] - t.sub[i] * d[i - 1]) / denom;
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

RadialLaplacian::RadialLaplacian(GridPtr grid, int dim) : grid_(std::move(grid)), dim_(dim) {
    if (dim_ < 2) throw std::invalid_argument("RadialLaplacian: dimension must be >= 2");
    const auto& r = grid_->nodes();
    const std::size_t M = r.size();
    n_ = M - 1;
    masses_ = grid_->cell_measures(dim_);

    T_.sub.assign(n_, 0.0);
    T_.diag.assign(n_, 0.0);
    T_.super.assign(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        const double h_up = r[i + 1] - r[i];
        const double cup = std::pow(grid_->face(i), dim_ - 1) / (h_up * masses_[i]);
        double cdn = 0.0;
        if (i > 0) {
            const double h_dn = r[i] - r[i - 1];
            cdn = std::pow(grid_->face(i - 1), dim_ - 1) / (h_dn * masses_[i]);
        }
        T_.diag[i] = cup + cdn;
        if (i > 0) T_.sub[i] = -cdn;
        if (i + 1 < n_) T_.super[i] = -cup;
        if (i + 1 == n_) bc_coupling_ = cup;  // couples to the r = 1 node
    }
}

std::vector<double> RadialLaplacian::apply_minus(const std::vector<double>& u_int,
                                                 double u_bc) const {
    if (u_int.size() != n_) throw std::invalid_argument("apply_minus: size mismatch");
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        double v = T_.diag[i] * u_int[i];
        if (i > 0) v += T_.sub[i] * u_int[i - 1];
        if (i + 1 < n_) v += T_.super[i] * u_int[i + 1];
        if (i + 1 == n_) v -= bc_coupling_ * u_bc;
        out[i] = v;
    }
    return out;
}

std::vector<double> RadialLaplacian::solve_helmholtz(double a, double b,
                                                     const std::vector<double>& f_int,
                                                     double bc) const {
    if (f_int.size() != n_) throw std::invalid_argument("solve_helmholtz: size mismatch");
    Tridiag s;
    s.sub.resize(n_);
    s.diag.resize(n_);
    s.super.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        s.sub[i] = a * T_.sub[i];
        s.diag[i] = a * T_.diag[i] + b;
        s.super[i] = a * T_.super[i];
    }
    std::vector<double> rhs = f_int;
    rhs[n_ - 1] += a * bc_coupling_ * bc;
    std::vector<double> u = thomas_solve(s, std::move(rhs));
    u.push_back(bc);
    return u;
}

std::vector<double> discrete_laplacian_apply(const RadialLaplacian& op,
                                             const std::vector<double>& full_values) {
    if (full_values.size() != op.interior_count() + 1)
        throw std::invalid_argument("discrete_laplacian_apply: size mismatch");
    std::vector<double> interior(full_values.begin(), full_values.end() - 1);
    std::vector<double> minus = op.apply_minus(interior, full_values.back());
    for (double& v : minus) v = -v;
    return minus;
}

}  // namespace memslab
