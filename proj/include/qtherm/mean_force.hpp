// mean_force.hpp — exact strong-coupling equilibrium thermodynamics of a
// finite system+reservoir composite: mean-force Hamiltonian, effective energy
// operator, heat capacity, the generalized FDR and the SNR bound.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtherm/fisher.hpp"
#include "qtherm/operator_core.hpp"
#include "qtherm/skew.hpp"

namespace qtherm {

struct CompositeModel {
    int dimS = 0;
    int dimR = 0;
    HermitianOperator H_S;
    HermitianOperator H_R;
    HermitianOperator V;  // on dimS * dimR

    CompositeModel(int ds, int dr, HermitianOperator hs, HermitianOperator hr,
                   HermitianOperator v);

    // H_S (x) I + I (x) H_R + V
    HermitianOperator composite() const;
};

struct ThermoReport {
    ThermoReport(double T, DensityMatrix pi, HermitianOperator hstar, HermitianOperator estar)
        : temperature(T), beta(1.0 / T), pi_S(std::move(pi)), H_star(std::move(hstar)),
          E_star(std::move(estar)) {}

    double temperature = 0.0;
    double beta = 0.0;
    DensityMatrix pi_S;
    HermitianOperator H_star;
    HermitianOperator E_star;
    double U = 0.0;
    double varU = 0.0;
    double Q = 0.0;
    double K = 0.0;
    double C = 0.0;
    double dT_E_star_mean = 0.0;
    double qfi_T = 0.0;
    double snr_bound = 0.0;  // C - <d_T E*>
    double fdr_residual = 0.0;
    double delta_beta_strong = 0.0;  // 1/sqrt(varU - Q)
    double delta_beta_weak = 0.0;    // 1/sqrt(varU)
    bool negative_snr_bound = false;
};

DensityMatrix global_gibbs(const CompositeModel& model, double T);

// Eq.-(10)-gauge mean-force Hamiltonian: -(1/beta) ln(tr_R e^{-bH} / tr e^{-bH_R}).
HermitianOperator mean_force_hamiltonian(const CompositeModel& model, double T);

// E* = d/dbeta [beta H*(beta)], central difference + Richardson.
HermitianOperator effective_energy_operator(const CompositeModel& model, double T);

ThermoReport thermo_report(const CompositeModel& model, double T);

// One grid point of a sweep; failed points carry the error text instead of a
// report so the sweep can continue past them.
struct SweepPoint {
    double temperature = 0.0;
    std::optional<ThermoReport> report;
    std::string error;
};

// OpenMP-parallel over grid points; deterministic grid-order output.
std::vector<SweepPoint> temperature_sweep(const CompositeModel& model,
                                          const std::vector<double>& T_grid,
                                          int threads = 0);
// Serial reference, kept for testing against the parallel path.
std::vector<SweepPoint> temperature_sweep_serial(const CompositeModel& model,
                                                 const std::vector<double>& T_grid);

}  // namespace qtherm
