// bench — timing comparison between the serial reference kernels and the
// OpenMP-parallel ones, plus an equality check on the results.

#include <chrono>
#include <cmath>
#include <cstdio>

#include <omp.h>

#include "qtherm/sweeps.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main() {
    const int trials = 400;
    std::printf("threads available: %d\n\n", omp_get_max_threads());

    {
        auto t0 = Clock::now();
        const auto serial = qtherm::theorem1_sweep_serial(trials, 2, 8, 42);
        const double ts = seconds_since(t0);
        t0 = Clock::now();
        const auto parallel = qtherm::theorem1_sweep(trials, 2, 8, 42);
        const double tp = seconds_since(t0);
        double max_diff = 0.0;
        for (int i = 0; i < trials; ++i)
            max_diff = std::max(max_diff, std::abs(serial[i].qfi - parallel[i].qfi));
        std::printf("theorem1 sweep (%d trials): serial %.3fs  parallel %.3fs  speedup %.2fx  "
                    "max |diff| %.3g\n",
                    trials, ts, tp, ts / tp, max_diff);
    }

    {
        auto t0 = Clock::now();
        const auto serial = qtherm::partition_sweep_serial(trials, 2, 8, 42);
        const double ts = seconds_since(t0);
        t0 = Clock::now();
        const auto parallel = qtherm::partition_sweep(trials, 2, 8, 42);
        const double tp = seconds_since(t0);
        double max_diff = 0.0;
        for (int i = 0; i < trials; ++i)
            max_diff = std::max(max_diff, std::abs(serial[i].quantum - parallel[i].quantum));
        std::printf("partition sweep (%d trials): serial %.3fs  parallel %.3fs  speedup %.2fx  "
                    "max |diff| %.3g\n",
                    trials, ts, tp, ts / tp, max_diff);
    }

    {
        const std::vector<double> gammas{0.1, 0.5, 1.0, 2.0};
        const auto grid = qtherm::log_spaced_grid(0.05, 10.0, 100);
        auto t0 = Clock::now();
        const auto serial = qtherm::oscillator_grid_serial(1.0, 1.0, 50.0, gammas, grid);
        const double ts = seconds_since(t0);
        t0 = Clock::now();
        const auto parallel = qtherm::oscillator_grid(1.0, 1.0, 50.0, gammas, grid);
        const double tp = seconds_since(t0);
        double max_diff = 0.0;
        for (std::size_t i = 0; i < serial.size(); ++i)
            max_diff = std::max(max_diff, std::abs(serial[i].report.Q - parallel[i].report.Q));
        std::printf("oscillator grid (%zu points): serial %.3fs  parallel %.3fs  speedup %.2fx  "
                    "max |diff| %.3g\n",
                    serial.size(), ts, tp, ts / tp, max_diff);
    }
    return 0;
}
