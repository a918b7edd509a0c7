#pragma once

#include <functional>
#include <span>
#include <vector>

namespace memslab::kernels {

struct MinResult {
    double value;
    double arg;  // radius where the minimum was attained
};

using PointFn = std::function<double(double)>;

// Pointwise scan kernels. The OpenMP versions are the production path; the
// _serial variants are the reference implementations the tests and the
// benchmark compare against.
MinResult min_scan_serial(std::span<const double> nodes, const PointFn& f);
MinResult min_scan(std::span<const double> nodes, const PointFn& f);

// Trapezoidal sum of f(r) r^{dim-1} over the node polyline.
double weighted_trapezoid_serial(std::span<const double> nodes, const PointFn& f, int dim);
double weighted_trapezoid(std::span<const double> nodes, const PointFn& f, int dim);

// Evaluate f at every node.
std::vector<double> map_eval_serial(std::span<const double> nodes, const PointFn& f);
std::vector<double> map_eval(std::span<const double> nodes, const PointFn& f);

int thread_count();

}  // namespace memslab::kernels
