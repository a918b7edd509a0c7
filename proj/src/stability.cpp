#include "memslab/stability.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace memslab {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

SpMat sparse_from_tridiag(const Tridiag& t) {
    const long n = long(t.size());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(3 * n);
    for (long i = 0; i < n; ++i) {
        trip.emplace_back(i, i, t.diag[i]);
        if (i > 0) trip.emplace_back(i, i - 1, t.sub[i]);
        if (i + 1 < n) trip.emplace_back(i, i + 1, t.super[i]);
    }
    SpMat m(n, n);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

// Gradient stiffness sum_edges V(face) face^{N-1} ((f_{i+1}-f_i)/h)^2 h for
// interior unknowns with f(1) = 0.
SpMat gradient_stiffness_dirichlet(const RadialLaplacian& op, const kernels::PointFn& V) {
    const auto& grid = op.grid();
    const auto& r = grid.nodes();
    const long n = long(op.interior_count());
    std::vector<Eigen::Triplet<double>> trip;
    for (long e = 0; e < n; ++e) {
        const double h = r[e + 1] - r[e];
        const double face = grid.face(e);
        const double g = V(face) * std::pow(face, op.dim() - 1) / h;
        trip.emplace_back(e, e, g);
        if (e + 1 < n) {
            trip.emplace_back(e + 1, e + 1, g);
            trip.emplace_back(e, e + 1, -g);
            trip.emplace_back(e + 1, e, -g);
        }
        // edge n-1 ties node n-1 to the zero boundary value
    }
    SpMat m(n, n);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

struct MWork {
    Vec m;  // interior masses

    double dot(const Vec& a, const Vec& b) const { return (m.array() * a.array() * b.array()).sum(); }
    double norm(const Vec& a) const { return std::sqrt(dot(a, a)); }
};

}  // namespace

EigenResult navier_eigen_smallest(const ProblemParams& params, const RadialLaplacian& op,
                                  const std::vector<double>& potential_interior) {
    params.validate();
    const long n = long(op.interior_count());
    std::vector<double> pot = potential_interior;
    if (pot.empty()) pot.assign(n, 0.0);
    if (long(pot.size()) != n)
        throw std::invalid_argument("navier_eigen_smallest: potential size mismatch");
    for (double v : pot)
        if (!std::isfinite(v))
            throw std::invalid_argument("navier_eigen_smallest: non-finite potential");

    SpMat T = sparse_from_tridiag(op.minus_matrix());
    SpMat A = params.beta * SpMat(T * T) + params.tau * T;
    for (long i = 0; i < n; ++i) A.coeffRef(i, i) -= pot[i];
    A.makeCompressed();
    SpMat Aabs = A.cwiseAbs();

    MWork mw;
    mw.m = Vec(n);
    for (long i = 0; i < n; ++i) mw.m[i] = op.masses()[i];

    auto rayleigh = [&](const Vec& x) { return mw.dot(x, A * x); };

    // beta*T^2 + tau*T is positive in the mass inner product, so the bottom
    // eigenvalue is bounded below by -max(potential).
    double vmax = 0.0;
    for (double v : pot) vmax = std::max(vmax, v);
    double shift = -vmax - 1.0;

    Vec x(n);
    for (long i = 0; i < n; ++i) {
        const double r = op.grid().node(std::size_t(i));
        x[i] = 1.0 - r * r;  // deterministic start vector
    }
    x /= mw.norm(x);

    const int max_restarts = 5;
    SpMat I(n, n);
    I.setIdentity();

    double best_res = std::numeric_limits<double>::infinity();
    double best_mu = rayleigh(x);
    double best_scale = 0.0;
    Vec best_x = x;

    for (int restart = 0; restart <= max_restarts; ++restart) {
        SpMat shifted = A - shift * I;
        Eigen::SparseLU<SpMat> lu;
        lu.compute(shifted);
        if (lu.info() != Eigen::Success) {
            shift -= 1e-6 * (std::abs(shift) + 1.0);
            continue;
        }
        const double res_at_start = best_res;
        double mu_prev = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 80; ++it) {
            Vec y = lu.solve(x);
            if (!y.allFinite()) break;
            y /= mw.norm(y);
            x = y;
            const double mu = rayleigh(x);
            const double residual = mw.norm(A * x - mu * x);
            if (residual < best_res) {
                best_res = residual;
                best_mu = mu;
                best_x = x;
                best_scale = mw.norm(Aabs * x.cwiseAbs());
            }
            if (std::abs(mu - mu_prev) < 1e-12 * (std::abs(mu) + 1.0)) break;
            mu_prev = mu;
        }
        // Rayleigh shift, kept strictly off the eigenvalue.
        shift = best_mu - 1e-5 * (std::abs(best_mu) + 1.0);
        if (restart > 0 && best_res >= 0.5 * res_at_start) break;  // residual floor reached
    }

    // Backward-error certification: |A||x| bounds what applying A can resolve
    // in doubles, so the target is relative to it, not absolute. A noise
    // floor near |mu| itself means the grid is too ill-conditioned for
    // double-precision spectral work; refuse rather than report garbage.
    const double noise_floor = std::numeric_limits<double>::epsilon() * best_scale;
    if (noise_floor > 0.1 * (std::abs(best_mu) + 1.0))
        throw std::runtime_error(
            "navier_eigen_smallest: roundoff floor " + std::to_string(noise_floor) +
            " swamps mu=" + std::to_string(best_mu) + "; use a milder grid");
    if (best_res <= 1e-6 * std::abs(best_mu) + 1e3 * noise_floor + 1e-10) {
        std::vector<double> h(best_x.data(), best_x.data() + n);
        h.push_back(0.0);
        GridFunction ef(op.grid_ptr(), std::move(h), 0.0, 0.0);
        return EigenResult{best_mu, std::move(ef), best_res, 0};
    }
    throw std::runtime_error("navier_eigen_smallest: inverse iteration did not certify; last mu=" +
                             std::to_string(best_mu) + " residual=" + std::to_string(best_res));
}

EigenResult mu1_of_solution(const ProblemParams& params, const RadialLaplacian& op,
                            double lambda, const GridFunction& u) {
    const std::size_t n = op.interior_count();
    if (u.values.size() != n + 1)
        throw std::invalid_argument("mu1_of_solution: profile/grid mismatch");
    std::vector<double> pot(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = 1.0 - u.values[i];
        if (d <= 0.0) throw std::invalid_argument("mu1_of_solution: sup u >= 1");
        pot[i] = 2.0 * lambda / (d * d * d);
    }
    return navier_eigen_smallest(params, op, pot);
}

double rayleigh_min_mode(int dim, int k, const ModeFormSpec& spec,
                         const kernels::PointFn& weight, const RadialLaplacian& op) {
    if (k < 0) throw std::invalid_argument("rayleigh_min_mode: k must be >= 0");
    if (op.dim() != dim) throw std::invalid_argument("rayleigh_min_mode: dimension mismatch");
    const long n = long(op.interior_count());
    const double ck = double(k) * double(dim + k - 2);

    Tridiag tk = op.minus_matrix();
    for (long i = 0; i < n; ++i) {
        const double r = op.grid().node(std::size_t(i));
        tk.diag[i] += ck / (r * r);
    }
    SpMat S = sparse_from_tridiag(tk);
    Vec m(n);
    for (long i = 0; i < n; ++i) m[i] = op.masses()[i];
    SpMat D(n, n);
    for (long i = 0; i < n; ++i) D.insert(i, i) = m[i];
    SpMat A = spec.beta * SpMat(SpMat(S.transpose() * D) * S);
    if (spec.tau != 0.0) {
        SpMat G = gradient_stiffness_dirichlet(op, [](double) { return 1.0; });
        if (ck != 0.0) {
            for (long i = 0; i < n; ++i) {
                const double r = op.grid().node(std::size_t(i));
                G.coeffRef(i, i) += ck * m[i] / (r * r);
            }
        }
        A += spec.tau * G;
    }
    A.makeCompressed();

    Vec B(n);
    for (long i = 0; i < n; ++i) {
        const double w = weight(op.grid().node(std::size_t(i)));
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("rayleigh_min_mode: weight must be positive finite on nodes");
        B[i] = m[i] * w;
    }

    Eigen::SimplicialLDLT<SpMat> ldlt;
    ldlt.compute(A);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("rayleigh_min_mode: numerator form not factorizable");

    Vec y(n);
    for (long i = 0; i < n; ++i) {
        const double r = op.grid().node(std::size_t(i));
        y[i] = 1.0 - r * r;
    }
    double theta_prev = std::numeric_limits<double>::infinity();
    double theta = theta_prev;
    for (int it = 0; it < 2000; ++it) {
        Vec z = B.array() * y.array();
        Vec y2 = ldlt.solve(z);
        if (!y2.allFinite()) throw std::runtime_error("rayleigh_min_mode: solve failed");
        y2 /= y2.norm();
        y = y2;
        const Vec Ay = A * y;
        theta = y.dot(Ay) / (y.array().square() * B.array()).sum();
        if (std::abs(theta - theta_prev) < 1e-10 * (std::abs(theta) + 1e-30)) break;
        theta_prev = theta;
    }
    return theta;
}

double rayleigh_min_first_order(int dim, const FirstOrderForm& form, const RadialLaplacian& op) {
    if (op.dim() != dim) throw std::invalid_argument("rayleigh_min_first_order: dimension mismatch");
    const auto& grid = op.grid();
    const auto& r = grid.nodes();
    const long M = long(r.size());
    const long n = form.dirichlet_at_one ? M - 1 : M;

    Tridiag K;
    K.sub.assign(n, 0.0);
    K.diag.assign(n, 0.0);
    K.super.assign(n, 0.0);
    for (long e = 0; e + 1 < M; ++e) {
        const double h = r[e + 1] - r[e];
        const double face = grid.face(e);
        const double g = form.V(face) * std::pow(face, dim - 1) / h;
        K.diag[e] += g;
        if (e + 1 < n) {
            K.diag[e + 1] += g;
            K.super[e] = -g;
            K.sub[e + 1] = -g;
        }
    }
    if (!form.dirichlet_at_one) K.diag[n - 1] += form.boundary_coeff;

    const auto masses = op.masses();
    std::vector<double> B(n);
    for (long i = 0; i < n; ++i) {
        const double w = form.W(r[i]);
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("rayleigh_min_first_order: weight must be positive");
        B[i] = masses[i] * w;
    }

    std::vector<double> y(n);
    for (long i = 0; i < n; ++i) y[i] = form.dirichlet_at_one ? 1.0 - r[i] * r[i] : 1.0;
    auto quotient = [&](const std::vector<double>& x) {
        double num = 0.0, den = 0.0;
        for (long i = 0; i < n; ++i) {
            double kx = K.diag[i] * x[i];
            if (i > 0) kx += K.sub[i] * x[i - 1];
            if (i + 1 < n) kx += K.super[i] * x[i + 1];
            num += x[i] * kx;
            den += B[i] * x[i] * x[i];
        }
        return num / den;
    };

    double theta_prev = std::numeric_limits<double>::infinity();
    double theta = theta_prev;
    for (int it = 0; it < 4000; ++it) {
        std::vector<double> z(n);
        for (long i = 0; i < n; ++i) z[i] = B[i] * y[i];
        y = thomas_solve(K, std::move(z));
        double nrm = 0.0;
        for (double v : y) nrm += v * v;
        nrm = std::sqrt(nrm);
        for (double& v : y) v /= nrm;
        theta = quotient(y);
        if (std::abs(theta - theta_prev) < 1e-11 * (std::abs(theta) + 1e-30)) break;
        theta_prev = theta;
    }
    return theta;
}

}  // namespace memslab
