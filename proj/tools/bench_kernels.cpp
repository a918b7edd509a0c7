// Compares the OpenMP scan kernels against their serial references on the
// kinds of integrands the certificates use.

#include "memslab/grid.hpp"
#include "memslab/kernels.hpp"
#include "memslab/power_sum.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <span>

using namespace memslab;

namespace {

template <typename F>
double time_of(F&& f, int reps) {
    f();  // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

}  // namespace

int main() {
    const std::size_t m = 2'000'000;
    auto grid = make_grid(m, 1e-8, Grading::Geometric);
    std::span<const double> nodes(grid->nodes().data(), grid->size() - 1);

    PowerSum profile({{Rational(1), Rational(0)},
                      {Rational(-3, 2), Rational(4, 3)},
                      {Rational(1, 2), Rational(3)}});
    const PowerSum bil = profile.bilaplacian(9);
    auto margin = [&](double r) {
        const double o = 1.0 - profile.eval(r);
        return 249.0 - bil.eval(r) * o * o;
    };
    auto weight = [](double r) { return 1.0 / (r * r); };

    std::printf("threads: %d, nodes: %zu\n", kernels::thread_count(), nodes.size());

    const int reps = 5;
    double v_serial = 0.0, v_par = 0.0;
    const double t_min_s = time_of([&] { v_serial = kernels::min_scan_serial(nodes, margin).value; }, reps);
    const double t_min_p = time_of([&] { v_par = kernels::min_scan(nodes, margin).value; }, reps);
    std::printf("min_scan            serial %8.4f s  parallel %8.4f s  speedup %5.2fx  |d| %.3e\n",
                t_min_s, t_min_p, t_min_s / t_min_p, std::abs(v_serial - v_par));

    const double t_tz_s = time_of([&] { v_serial = kernels::weighted_trapezoid_serial(nodes, weight, 9); }, reps);
    const double t_tz_p = time_of([&] { v_par = kernels::weighted_trapezoid(nodes, weight, 9); }, reps);
    std::printf("weighted_trapezoid  serial %8.4f s  parallel %8.4f s  speedup %5.2fx  |d| %.3e\n",
                t_tz_s, t_tz_p, t_tz_s / t_tz_p, std::abs(v_serial - v_par));

    std::vector<double> out;
    const double t_map_s = time_of([&] { out = kernels::map_eval_serial(nodes, margin); }, reps);
    const double t_map_p = time_of([&] { out = kernels::map_eval(nodes, margin); }, reps);
    std::printf("map_eval            serial %8.4f s  parallel %8.4f s  speedup %5.2fx\n",
                t_map_s, t_map_p, t_map_s / t_map_p);
    return 0;
}
