#include "qtherm/sweeps.hpp"

#include <cmath>
#include <omp.h>

#include "qtherm/fisher.hpp"

namespace qtherm {

HermitianOperator random_hermitian(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    return HermitianOperator(0.5 * (g + g.adjoint().eval()));
}

DensityMatrix random_density(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Matrix w = g * g.adjoint();
    w += 1e-6 * w.trace().real() / dim * Matrix::Identity(dim, dim);
    w /= w.trace().real();
    return DensityMatrix(std::move(w));
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    // splitmix64 over (seed, trial)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

Theorem1Trial run_theorem1_trial(int dim, std::uint64_t tseed) {
    std::mt19937_64 rng(tseed);
    const HermitianOperator a0 = random_hermitian(dim, rng);
    const HermitianOperator a1 = random_hermitian(dim, rng);
    const HermitianOperator a2 = random_hermitian(dim, rng);
    std::uniform_real_distribution<double> theta_dist(0.25, 1.5);
    const double theta = theta_dist(rng);

    ExponentialFamily fam;
    fam.generator = [a0, a1, a2](double t) {
        return HermitianOperator(a0.matrix() + t * a1.matrix() + t * t * a2.matrix());
    };
    const QfiReport rep = theorem1_check(fam, theta);

    Theorem1Trial out;
    out.seed = tseed;
    out.dim = dim;
    out.theta = theta;
    out.qfi = rep.qfi;
    out.bound = rep.classical_bound;
    out.rel_gap = (rep.qfi - rep.classical_bound) / (1.0 + rep.classical_bound);
    return out;
}

PartitionTrial run_partition_trial(int dim, std::uint64_t tseed) {
    std::mt19937_64 rng(tseed);
    const DensityMatrix rho = random_density(dim, rng);
    const HermitianOperator obs = random_hermitian(dim, rng);
    const VariancePartition part = skew_avg(rho, obs);

    PartitionTrial out;
    out.seed = tseed;
    out.dim = dim;
    out.variance = part.variance;
    out.quantum = part.quantum;
    out.classical = part.classical;
    out.rel_residual = std::abs(part.quantum + part.classical - part.variance) /
                       std::max(part.variance, 1e-300);
    return out;
}

void check_dims(int trials, int dim_lo, int dim_hi) {
    if (trials < 1) throw DomainError("sweep: trials must be >= 1");
    if (dim_lo < 2 || dim_hi < dim_lo)
        throw DomainError("sweep: dims must satisfy 2 <= lo <= hi");
}

}  // namespace

std::vector<Theorem1Trial> theorem1_sweep_serial(int trials, int dim_lo, int dim_hi,
                                                 std::uint64_t seed) {
    check_dims(trials, dim_lo, dim_hi);
    std::vector<Theorem1Trial> out(trials);
    for (int t = 0; t < trials; ++t)
        out[t] = run_theorem1_trial(dim_lo + t % (dim_hi - dim_lo + 1), trial_seed(seed, t));
    return out;
}

std::vector<Theorem1Trial> theorem1_sweep(int trials, int dim_lo, int dim_hi,
                                          std::uint64_t seed, int threads) {
    check_dims(trials, dim_lo, dim_hi);
    if (threads > 0) omp_set_num_threads(threads);
    std::vector<Theorem1Trial> out(trials);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t)
        out[t] = run_theorem1_trial(dim_lo + t % (dim_hi - dim_lo + 1), trial_seed(seed, t));
    return out;
}

std::vector<PartitionTrial> partition_sweep_serial(int trials, int dim_lo, int dim_hi,
                                                   std::uint64_t seed) {
    check_dims(trials, dim_lo, dim_hi);
    std::vector<PartitionTrial> out(trials);
    for (int t = 0; t < trials; ++t)
        out[t] = run_partition_trial(dim_lo + t % (dim_hi - dim_lo + 1), trial_seed(seed, t));
    return out;
}

std::vector<PartitionTrial> partition_sweep(int trials, int dim_lo, int dim_hi,
                                            std::uint64_t seed, int threads) {
    check_dims(trials, dim_lo, dim_hi);
    if (threads > 0) omp_set_num_threads(threads);
    std::vector<PartitionTrial> out(trials);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t)
        out[t] = run_partition_trial(dim_lo + t % (dim_hi - dim_lo + 1), trial_seed(seed, t));
    return out;
}

namespace {

OscillatorGridRow run_grid_point(double mass, double omega, double cutoff, double gamma,
                                 double T) {
    OscillatorGridRow row;
    row.temperature = T;
    row.gamma = gamma;
    try {
        const OscillatorModel model(mass, omega, gamma, cutoff);
        row.report = oscillator_report(model, T);
        row.ok = true;
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::vector<OscillatorGridRow> oscillator_grid_serial(double mass, double omega, double cutoff,
                                                      const std::vector<double>& gamma_list,
                                                      const std::vector<double>& T_grid) {
    std::vector<OscillatorGridRow> out;
    out.reserve(gamma_list.size() * T_grid.size());
    for (double g : gamma_list)
        for (double T : T_grid) out.push_back(run_grid_point(mass, omega, cutoff, g, T));
    return out;
}

std::vector<OscillatorGridRow> oscillator_grid(double mass, double omega, double cutoff,
                                               const std::vector<double>& gamma_list,
                                               const std::vector<double>& T_grid, int threads) {
    const int ng = static_cast<int>(gamma_list.size());
    const int nt = static_cast<int>(T_grid.size());
    std::vector<OscillatorGridRow> out(static_cast<std::size_t>(ng) * nt);
    if (threads > 0) omp_set_num_threads(threads);
#pragma omp parallel for schedule(dynamic)
    for (int idx = 0; idx < ng * nt; ++idx)
        out[idx] = run_grid_point(mass, omega, cutoff, gamma_list[idx / nt], T_grid[idx % nt]);
    return out;
}

std::vector<double> log_spaced_grid(double lo, double hi, int points) {
    if (!(lo > 0.0 && hi > lo) || points < 1)
        throw DomainError("log_spaced_grid: need 0 < lo < hi and points >= 1");
    std::vector<double> grid(points);
    if (points == 1) {
        grid[0] = lo;
        return grid;
    }
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < points; ++i)
        grid[i] = std::exp(llo + (lhi - llo) * i / (points - 1));
    return grid;
}

}  // namespace qtherm
