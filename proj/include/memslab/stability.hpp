#pragma once

#include "memslab/grid.hpp"
#include "memslab/kernels.hpp"
#include "memslab/operators.hpp"
#include "memslab/problem.hpp"

#include <vector>

namespace memslab {

struct EigenResult {
    double mu = 0.0;
    GridFunction eigenfunction;  // normalized: int h^2 r^{N-1} dr = 1
    double residual = 0.0;
    int mode_index = 0;
};

// Smallest eigenvalue of beta*Delta^2 - tau*Delta - potential with Navier
// rows (h = Delta h = 0 at r = 1), by shift-invert inverse iteration with
// Rayleigh-quotient shift updates. The potential is sampled at the interior
// nodes; pass an empty vector for a zero potential.
EigenResult navier_eigen_smallest(const ProblemParams& params, const RadialLaplacian& op,
                                  const std::vector<double>& potential_interior);

// First eigenvalue of the linearization around a solution profile u at
// parameter lambda, i.e. potential 2*lambda/(1-u)^3.
EigenResult mu1_of_solution(const ProblemParams& params, const RadialLaplacian& op,
                            double lambda, const GridFunction& u);

// Numerator options for the mode-k quadratic form.
struct ModeFormSpec {
    double beta = 1.0;
    double tau = 0.0;  // adds tau * (int f'^2 + c_k f^2/r^2) to the numerator
};

// Minimal value over discrete f with f(1) = 0 of
//   [beta*int (f'' + ((N-1)/r)f' - c_k f/r^2)^2 r^{N-1} dr + tau-term]
//   / int W f^2 r^{N-1} dr,
// with c_k = k(N+k-2), via the associated generalized eigenproblem.
double rayleigh_min_mode(int dim, int k, const ModeFormSpec& spec,
                         const kernels::PointFn& weight, const RadialLaplacian& op);

// First-order quotient (int V x'^2 r^{N-1} + boundary_coeff * x(1)^2)
// / int W x^2 r^{N-1}, with x(1) = 0 when dirichlet_at_one is set.
struct FirstOrderForm {
    kernels::PointFn V;
    kernels::PointFn W;
    bool dirichlet_at_one = true;
    double boundary_coeff = 0.0;
};

double rayleigh_min_first_order(int dim, const FirstOrderForm& form, const RadialLaplacian& op);

}  // namespace memslab
