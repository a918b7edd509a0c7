#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

namespace memslab {

enum class Grading { Geometric, Power };

// Radial mesh on (0, 1]: strictly increasing nodes r_1 < ... < r_M = 1 with
// r_1 = r_min > 0. The origin is never a node; singular weights are only
// evaluated on [r_min, 1].
class RadialGrid {
public:
    RadialGrid(std::vector<double> nodes, double r_min, Grading mode);

    const std::vector<double>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    double r_min() const { return r_min_; }
    double node(std::size_t i) const { return nodes_[i]; }
    Grading mode() const { return mode_; }

    // Face i sits between nodes i and i+1 (arithmetic midpoint); the inner
    // face of cell 0 is the origin, so its flux vanishes by regularity.
    double face(std::size_t i) const { return faces_[i]; }

    // Cell measure int r^{N-1} dr over cell i, exact for the power weight.
    std::vector<double> cell_measures(int dim) const;

private:
    std::vector<double> nodes_;
    std::vector<double> faces_;
    double r_min_;
    Grading mode_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(std::size_t node_count, double r_min, Grading mode, double power_q = 2.0);

// Samples of a radial profile on a grid, together with the Navier data the
// profile carries at r = 1 (value alpha and Laplacian gamma).
struct GridFunction {
    GridPtr grid;
    std::vector<double> values;
    double boundary_value = 0.0;      // u(1)
    double boundary_laplacian = 0.0;  // Delta u(1)

    GridFunction() = default;
    GridFunction(GridPtr g, std::vector<double> v, double alpha = 0.0, double gamma = 0.0);

    double sup_norm() const;
};

GridFunction sample(const GridPtr& grid, const std::function<double(double)>& f,
                    double alpha = 0.0, double gamma = 0.0);

}  // namespace memslab
