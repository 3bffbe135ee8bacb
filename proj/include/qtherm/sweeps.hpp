// sweeps.hpp — randomized verification sweeps and figure grids. Each kernel
// has an OpenMP-parallel entry point and a serial reference; per-trial seeds
// make the output independent of scheduling.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qtherm/oscillator.hpp"
#include "qtherm/skew.hpp"

namespace qtherm {

// Random hermitian with i.i.d. standard-normal entries, symmetrized.
HermitianOperator random_hermitian(int dim, std::mt19937_64& rng);

// Random full-rank density matrix (Wishart-like with a small ridge).
DensityMatrix random_density(int dim, std::mt19937_64& rng);

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

struct Theorem1Trial {
    std::uint64_t seed = 0;
    int dim = 0;
    double theta = 0.0;
    double qfi = 0.0;
    double bound = 0.0;
    // (F - K)/(1 + K); positive beyond 1e-8 counts as a violation.
    double rel_gap = 0.0;
};

// Quadratic-generator exponential families A_theta = A0 + theta A1 + theta^2 A2,
// dims cycling dim_lo..dim_hi.
std::vector<Theorem1Trial> theorem1_sweep(int trials, int dim_lo, int dim_hi,
                                          std::uint64_t seed, int threads = 0);
std::vector<Theorem1Trial> theorem1_sweep_serial(int trials, int dim_lo, int dim_hi,
                                                 std::uint64_t seed);

struct PartitionTrial {
    std::uint64_t seed = 0;
    int dim = 0;
    double variance = 0.0;
    double quantum = 0.0;
    double classical = 0.0;
    double rel_residual = 0.0;  // |Q + K - Var| / max(Var, 1e-300)
};

std::vector<PartitionTrial> partition_sweep(int trials, int dim_lo, int dim_hi,
                                            std::uint64_t seed, int threads = 0);
std::vector<PartitionTrial> partition_sweep_serial(int trials, int dim_lo, int dim_hi,
                                                   std::uint64_t seed);

struct OscillatorGridRow {
    double temperature = 0.0;
    double gamma = 0.0;
    bool ok = false;
    std::string error;
    OscillatorReport report;
};

std::vector<OscillatorGridRow> oscillator_grid(double mass, double omega, double cutoff,
                                               const std::vector<double>& gamma_list,
                                               const std::vector<double>& T_grid,
                                               int threads = 0);
std::vector<OscillatorGridRow> oscillator_grid_serial(double mass, double omega, double cutoff,
                                                      const std::vector<double>& gamma_list,
                                                      const std::vector<double>& T_grid);

std::vector<double> log_spaced_grid(double lo, double hi, int points);

}  // namespace qtherm
