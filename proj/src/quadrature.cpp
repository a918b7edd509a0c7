#include "memslab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace memslab {

namespace {

double trapezoid_values(const std::vector<double>& nodes, const std::vector<double>& fv, int dim) {
    for (double v : fv)
        if (!std::isfinite(v)) throw std::runtime_error("integrate_radial: non-finite sample");
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        double wa = fv[i] * std::pow(nodes[i], dim - 1);
        double wb = fv[i + 1] * std::pow(nodes[i + 1], dim - 1);
        double term = 0.5 * (wa + wb) * (nodes[i + 1] - nodes[i]);
        double y = term - comp;
        double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sum;
}

}  // namespace

double integrate_radial(const GridFunction& f, int dim) {
    return trapezoid_values(f.grid->nodes(), f.values, dim);
}

double integrate_radial(const kernels::PointFn& f, const RadialGrid& grid, int dim) {
    auto fv = kernels::map_eval(grid.nodes(), f);
    return trapezoid_values(grid.nodes(), fv, dim);
}

}  // namespace memslab
