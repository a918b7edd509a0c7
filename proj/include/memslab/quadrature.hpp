#pragma once

#include "memslab/grid.hpp"
#include "memslab/kernels.hpp"

namespace memslab {

// Trapezoidal value of int f(r) r^{dim-1} dr over [r_min, 1]. The surface
// factor N*omega_N is deliberately omitted; it cancels in every quotient
// this project forms.
double integrate_radial(const GridFunction& f, int dim);
double integrate_radial(const kernels::PointFn& f, const RadialGrid& grid, int dim);

}  // namespace memslab
