#include "memslab/kernels.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace memslab::kernels {

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

MinResult min_scan_serial(std::span<const double> nodes, const PointFn& f) {
    MinResult best{std::numeric_limits<double>::infinity(), 0.0};
    for (double r : nodes) {
        double v = f(r);
        if (v < best.value) best = {v, r};
    }
    return best;
}

MinResult min_scan(std::span<const double> nodes, const PointFn& f) {
    MinResult best{std::numeric_limits<double>::infinity(), 0.0};
#pragma omp parallel
    {
        MinResult local{std::numeric_limits<double>::infinity(), 0.0};
#pragma omp for nowait
        for (long i = 0; i < long(nodes.size()); ++i) {
            double v = f(nodes[i]);
            if (v < local.value) local = {v, nodes[i]};
        }
#pragma omp critical
        {
            // Tie-break on radius so the result is deterministic.
            if (local.value < best.value ||
                (local.value == best.value && local.arg < best.arg))
                best = local;
        }
    }
    return best;
}

namespace {

double edge_sum(std::span<const double> nodes, std::span<const double> fv, int dim,
                long lo, long hi) {
    double sum = 0.0, comp = 0.0;
    for (long i = lo; i < hi; ++i) {
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

double weighted_trapezoid_serial(std::span<const double> nodes, const PointFn& f, int dim) {
    auto fv = map_eval_serial(nodes, f);
    return edge_sum(nodes, fv, dim, 0, long(nodes.size()) - 1);
}

double weighted_trapezoid(std::span<const double> nodes, const PointFn& f, int dim) {
    auto fv = map_eval(nodes, f);
    const long n_edges = long(nodes.size()) - 1;
    double total = 0.0;
    // Fixed chunking keeps the reduction order independent of thread count.
    const long chunk = 4096;
    const long n_chunks = (n_edges + chunk - 1) / chunk;
    std::vector<double> partial(n_chunks);
#pragma omp parallel for
    for (long c = 0; c < n_chunks; ++c) {
        long lo = c * chunk;
        long hi = std::min(lo + chunk, n_edges);
        partial[c] = edge_sum(nodes, fv, dim, lo, hi);
    }
    for (double p : partial) total += p;
    return total;
}

std::vector<double> map_eval_serial(std::span<const double> nodes, const PointFn& f) {
    std::vector<double> out(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) out[i] = f(nodes[i]);
    return out;
}

std::vector<double> map_eval(std::span<const double> nodes, const PointFn& f) {
    std::vector<double> out(nodes.size());
#pragma omp parallel for
    for (long i = 0; i < long(nodes.size()); ++i) out[i] = f(nodes[i]);
    return out;
}

}  // namespace memslab::kernels
