#pragma once

#include "memslab/grid.hpp"

#include <vector>

namespace memslab {

struct Tridiag {
    std::vector<double> sub;   // size n, sub[0] unused
    std::vector<double> diag;  // size n
    std::vector<double> super; // size n, super[n-1] unused

    std::size_t size() const { return diag.size(); }
};

// Thomas algorithm. The systems here are diagonally dominant M-matrices.
std::vector<double> thomas_solve(const Tridiag& t, std::vector<double> rhs);

// Conservative finite-volume discretization of the radial Laplacian
// u'' + ((N-1)/r) u' on a RadialGrid. The inner face of the first cell is
// the origin, where the flux r^{N-1} u' vanishes for regular profiles; the
// node at r = 1 carries Dirichlet data. Exact on constants and on r^2.
class RadialLaplacian {
public:
    RadialLaplacian(GridPtr grid, int dim);

    const RadialGrid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    int dim() const { return dim_; }
    std::size_t interior_count() const { return n_; }

    // T = -Laplacian restricted to the interior unknowns (boundary node
    // eliminated). Positive definite in the mass inner product.
    const Tridiag& minus_matrix() const { return T_; }

    // Coefficient multiplying the boundary value in the last interior row
    // of T; moves to the right-hand side when the Dirichlet value is known.
    double boundary_coupling() const { return bc_coupling_; }

    // (T u)_i for interior u with given boundary value.
    std::vector<double> apply_minus(const std::vector<double>& u_int, double u_bc) const;

    // Solve (a*T + b*I) u = f on the interior with u(1) = bc; returns the
    // full node vector including the boundary node.
    std::vector<double> solve_helmholtz(double a, double b,
                                        const std::vector<double>& f_int, double bc) const;

    // Cell measures int r^{N-1} dr, one per node (quadrature/mass weights).
    const std::vector<double>& masses() const { return masses_; }

private:
    GridPtr grid_;
    int dim_;
    std::size_t n_;
    Tridiag T_;
    double bc_coupling_;
    std::vector<double> masses_;
};

// Discrete Laplacian values at interior nodes of a full sample vector.
std::vector<double> discrete_laplacian_apply(const RadialLaplacian& op,
                                             const std::vector<double>& full_values);

}  // namespace memslab
