#include "memslab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace memslab {

RadialGrid::RadialGrid(std::vector<double> nodes, double r_min, Grading mode)
    : nodes_(std::move(nodes)), r_min_(r_min), mode_(mode) {
    if (nodes_.size() < 4) throw std::invalid_argument("RadialGrid: too few nodes");
    if (nodes_.front() <= 0.0) throw std::invalid_argument("RadialGrid: first node must be > 0");
    if (std::abs(nodes_.back() - 1.0) > 1e-14)
        throw std::invalid_argument("RadialGrid: last node must be 1");
    nodes_.back() = 1.0;
    for (std::size_t i = 1; i < nodes_.size(); ++i)
        if (nodes_[i] <= nodes_[i - 1])
            throw std::invalid_argument("RadialGrid: nodes must be strictly increasing");
    faces_.resize(nodes_.size() - 1);
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
        faces_[i] = 0.5 * (nodes_[i] + nodes_[i + 1]);
}

std::vector<double> RadialGrid::cell_measures(int dim) const {
    std::vector<double> m(nodes_.size());
    auto powN = [dim](double r) { return std::pow(r, dim); };
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        double lo = (i == 0) ? 0.0 : faces_[i - 1];
        double hi = (i + 1 == nodes_.size()) ? 1.0 : faces_[i];
        m[i] = (powN(hi) - powN(lo)) / dim;
    }
    return m;
}

GridPtr make_grid(std::size_t node_count, double r_min, Grading mode, double power_q) {
    if (node_count < 16) throw std::invalid_argument("make_grid: need at least 16 nodes");
    if (!(r_min > 0.0 && r_min < 1.0)) throw std::invalid_argument("make_grid: r_min in (0,1)");
    std::vector<double> nodes(node_count);
    if (mode == Grading::Geometric) {
        const double ratio = std::pow(1.0 / r_min, 1.0 / double(node_count - 1));
        for (std::size_t i = 0; i < node_count; ++i)
            nodes[i] = r_min * std::pow(ratio, double(i));
    } else {
        if (power_q <= 0.0) throw std::invalid_argument("make_grid: power exponent must be > 0");
        for (std::size_t i = 0; i < node_count; ++i)
            nodes[i] = std::pow(double(i + 1) / double(node_count), power_q);
        if (nodes.front() < r_min)
            throw std::invalid_argument("make_grid: power grading puts first node below r_min");
    }
    nodes.back() = 1.0;
    const double first = nodes.front();
    return std::make_shared<RadialGrid>(std::move(nodes), first, mode);
}

GridFunction::GridFunction(GridPtr g, std::vector<double> v, double alpha, double gamma)
    : grid(std::move(g)), values(std::move(v)), boundary_value(alpha), boundary_laplacian(gamma) {
    if (values.size() != grid->size())
        throw std::invalid_argument("GridFunction: value/node count mismatch");
}

double GridFunction::sup_norm() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

GridFunction sample(const GridPtr& grid, const std::function<double(double)>& f,
                    double alpha, double gamma) {
    std::vector<double> v(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i) v[i] = f(grid->node(i));
    return GridFunction(grid, std::move(v), alpha, gamma);
}

}  // namespace memslab
